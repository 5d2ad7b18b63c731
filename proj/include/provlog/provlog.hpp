#pragma once
// Everything the library exposes.

#include "provlog/caps.hpp"
#include "provlog/circuits.hpp"
#include "provlog/datalog.hpp"
#include "provlog/errors.hpp"
#include "provlog/exec.hpp"
#include "provlog/harness.hpp"
#include "provlog/model.hpp"
#include "provlog/semiring.hpp"
#include "provlog/trees.hpp"
#include "provlog/value.hpp"
