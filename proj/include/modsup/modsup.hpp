#ifndef MODSUP_MODSUP_HPP
#define MODSUP_MODSUP_HPP

#include "modsup/alphabet.hpp"
#include "modsup/check.hpp"
#include "modsup/coordination.hpp"
#include "modsup/errors.hpp"
#include "modsup/generator.hpp"
#include "modsup/io.hpp"
#include "modsup/ops.hpp"
#include "modsup/oracle.hpp"
#include "modsup/random.hpp"
#include "modsup/solver.hpp"
#include "modsup/synthesis.hpp"

#endif
