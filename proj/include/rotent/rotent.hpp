#pragma once

#include "rotent/tolerances.hpp"
#include "rotent/linalg.hpp"
#include "rotent/eigen.hpp"
#include "rotent/qcore.hpp"
#include "rotent/optics.hpp"
#include "rotent/schemes.hpp"
#include "rotent/gatesynth.hpp"
#include "rotent/detection.hpp"
