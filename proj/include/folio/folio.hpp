#pragma once

#include "folio/cover.hpp"
#include "folio/error.hpp"
#include "folio/evaluate.hpp"
#include "folio/features.hpp"
#include "folio/hyphenate.hpp"
#include "folio/layout.hpp"
#include "folio/linebreak.hpp"
#include "folio/manuscript.hpp"
#include "folio/metrics.hpp"
#include "folio/paginate.hpp"
#include "folio/pipeline.hpp"
#include "folio/planner.hpp"
#include "folio/random.hpp"
#include "folio/render.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"
#include "folio/units.hpp"
#include "folio/utf8.hpp"
