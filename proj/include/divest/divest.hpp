#pragma once

#include "divest/compensated_sum.hpp"
#include "divest/distribution.hpp"
#include "divest/entropic_basis.hpp"
#include "divest/error.hpp"
#include "divest/estimators.hpp"
#include "divest/exact_index.hpp"
#include "divest/index_spec.hpp"
#include "divest/inference.hpp"
#include "divest/io.hpp"
#include "divest/json_writer.hpp"
#include "divest/normal_quantile.hpp"
#include "divest/oracle.hpp"
#include "divest/sample_counts.hpp"
#include "divest/simulation.hpp"
