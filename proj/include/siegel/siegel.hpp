#pragma once

#include "siegel/angle.hpp"
#include "siegel/brjuno.hpp"
#include "siegel/capacity.hpp"
#include "siegel/cfrac.hpp"
#include "siegel/cli.hpp"
#include "siegel/errors.hpp"
#include "siegel/experiments.hpp"
#include "siegel/families.hpp"
#include "siegel/germ.hpp"
#include "siegel/linearize.hpp"
#include "siegel/mp.hpp"
#include "siegel/radius.hpp"
#include "siegel/report.hpp"
#include "siegel/scalar.hpp"
#include "siegel/series.hpp"
