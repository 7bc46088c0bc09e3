#pragma once

#include "vecmax/error.hpp"
#include "vecmax/scalar.hpp"
#include "vecmax/vector.hpp"
#include "vecmax/cone.hpp"
#include "vecmax/metric.hpp"
#include "vecmax/law.hpp"
#include "vecmax/scaling.hpp"
#include "vecmax/gauge.hpp"
#include "vecmax/instance.hpp"
#include "vecmax/graph.hpp"
#include "vecmax/validate.hpp"
#include "vecmax/certificate.hpp"
#include "vecmax/maximal.hpp"
#include "vecmax/cauchy.hpp"
#include "vecmax/ekeland.hpp"
#include "vecmax/props.hpp"
#include "vecmax/io.hpp"
#include "vecmax/version.hpp"
