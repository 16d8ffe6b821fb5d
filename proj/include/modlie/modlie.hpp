#pragma once

#include "modlie/algebra.hpp"
#include "modlie/json_io.hpp"
#include "modlie/prolong.hpp"
#include "modlie/queer.hpp"
#include "modlie/registry.hpp"
