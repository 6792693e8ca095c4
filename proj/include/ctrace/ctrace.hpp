#pragma once

#include "ctrace/algebra.hpp"
#include "ctrace/chambers.hpp"
#include "ctrace/composition.hpp"
#include "ctrace/error.hpp"
#include "ctrace/hecke.hpp"
#include "ctrace/io.hpp"
#include "ctrace/pel.hpp"
#include "ctrace/traces.hpp"
