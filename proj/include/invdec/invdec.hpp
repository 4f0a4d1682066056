#pragma once

#include "invdec/bench.hpp"
#include "invdec/decomposition.hpp"
#include "invdec/eigen.hpp"
#include "invdec/error.hpp"
#include "invdec/expmap.hpp"
#include "invdec/factorlog.hpp"
#include "invdec/gellmann.hpp"
#include "invdec/grades.hpp"
#include "invdec/oracle.hpp"
#include "invdec/smallmat.hpp"
#include "invdec/tolerances.hpp"
