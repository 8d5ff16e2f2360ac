#ifndef GAZECENTER_GAZECENTER_HPP
#define GAZECENTER_GAZECENTER_HPP

#include "gazecenter/dataset.hpp"
#include "gazecenter/errors.hpp"
#include "gazecenter/evaluate.hpp"
#include "gazecenter/geometry.hpp"
#include "gazecenter/grid.hpp"
#include "gazecenter/map_io.hpp"
#include "gazecenter/maps.hpp"
#include "gazecenter/metrics.hpp"
#include "gazecenter/saliency.hpp"
#include "gazecenter/svg.hpp"

#endif  // GAZECENTER_GAZECENTER_HPP
