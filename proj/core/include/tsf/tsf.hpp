#pragma once

#include "tsf/baselines.hpp"
#include "tsf/dataset_io.hpp"
#include "tsf/forest.hpp"
#include "tsf/importance.hpp"
#include "tsf/interval_features.hpp"
#include "tsf/interval_sampling.hpp"
#include "tsf/model_io.hpp"
#include "tsf/split_search.hpp"
#include "tsf/tree.hpp"
#include "tsf/types.hpp"
