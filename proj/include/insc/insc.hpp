#pragma once

#include "insc/errors.hpp"
#include "insc/field.hpp"
#include "insc/matrix.hpp"
#include "insc/linalg.hpp"
#include "insc/simplex.hpp"
#include "insc/qform.hpp"
#include "insc/arrangement.hpp"
#include "insc/inscribe.hpp"
#include "insc/profile.hpp"
#include "insc/zonotope.hpp"
#include "insc/catalog.hpp"
#include "insc/io.hpp"
#include "insc/report.hpp"
