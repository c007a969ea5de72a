#pragma once

#include "qlens/catalog.hpp"
#include "qlens/cone.hpp"
#include "qlens/error.hpp"
#include "qlens/io.hpp"
#include "qlens/linalg.hpp"
#include "qlens/qsystem.hpp"
#include "qlens/rational.hpp"
#include "qlens/surface.hpp"
#include "qlens/triangulation.hpp"
#include "qlens/version.hpp"
