#pragma once

#include "frobkit/bigint.hpp"
#include "frobkit/error.hpp"
#include "frobkit/semigroup.hpp"
#include "frobkit/shifted_geometric.hpp"
#include "frobkit/verifier.hpp"
#include "frobkit/report_io.hpp"
