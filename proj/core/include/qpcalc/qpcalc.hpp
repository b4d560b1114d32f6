#pragma once

#include "qpcalc/abelian.hpp"
#include "qpcalc/calculus.hpp"
#include "qpcalc/corpus.hpp"
#include "qpcalc/endo.hpp"
#include "qpcalc/errors.hpp"
#include "qpcalc/ginzburg.hpp"
#include "qpcalc/invariants.hpp"
#include "qpcalc/jet.hpp"
#include "qpcalc/linalg.hpp"
#include "qpcalc/morphism.hpp"
#include "qpcalc/qpot.hpp"
#include "qpcalc/quiver.hpp"
#include "qpcalc/rational.hpp"
#include "qpcalc/rewrite.hpp"
