#pragma once

#include "kmgrad/builtins.hpp"
#include "kmgrad/cadmissible.hpp"
#include "kmgrad/diagram.hpp"
#include "kmgrad/gcm.hpp"
#include "kmgrad/gradation.hpp"
#include "kmgrad/json_io.hpp"
#include "kmgrad/matrix.hpp"
#include "kmgrad/quotient.hpp"
#include "kmgrad/rational.hpp"
#include "kmgrad/rootsys.hpp"
