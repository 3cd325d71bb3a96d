#ifndef OMNISCIO_OMNISCIO_HPP
#define OMNISCIO_OMNISCIO_HPP

#include "omniscio/builtins.hpp"
#include "omniscio/co_sk.hpp"
#include "omniscio/lp_exact.hpp"
#include "omniscio/mutual_dependence.hpp"
#include "omniscio/partition.hpp"
#include "omniscio/rational.hpp"
#include "omniscio/source_io.hpp"
#include "omniscio/source_model.hpp"
#include "omniscio/subset.hpp"
#include "omniscio/tightness.hpp"

#endif  // OMNISCIO_OMNISCIO_HPP
