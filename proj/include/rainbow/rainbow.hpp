#pragma once

#include "rainbow/zp.hpp"
#include "rainbow/coloring.hpp"
#include "rainbow/equation.hpp"
#include "rainbow/classify.hpp"
#include "rainbow/oracle.hpp"
#include "rainbow/sumset.hpp"
