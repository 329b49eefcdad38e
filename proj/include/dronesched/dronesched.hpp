#pragma once

#include "dronesched/rational.hpp"
#include "dronesched/core_model.hpp"
#include "dronesched/id_assigner.hpp"
#include "dronesched/augmented_tree.hpp"
#include "dronesched/bin_packing.hpp"
#include "dronesched/online_scheduler.hpp"
#include "dronesched/variable_size.hpp"
#include "dronesched/interval_generator.hpp"
#include "dronesched/oracle.hpp"
#include "dronesched/harness.hpp"
