#pragma once

// Umbrella header: distance-field critical point analysis for point clouds.

#include "mucrit/bounds.hpp"
#include "mucrit/cech.hpp"
#include "mucrit/cone.hpp"
#include "mucrit/cone_field.hpp"
#include "mucrit/distance_field.hpp"
#include "mucrit/error.hpp"
#include "mucrit/flow.hpp"
#include "mucrit/io.hpp"
#include "mucrit/miniball.hpp"
#include "mucrit/point_cloud.hpp"
#include "mucrit/scan.hpp"
#include "mucrit/shapes.hpp"
#include "mucrit/spatial_index.hpp"
#include "mucrit/stability.hpp"
#include "mucrit/vec.hpp"
#include "mucrit/version.hpp"
