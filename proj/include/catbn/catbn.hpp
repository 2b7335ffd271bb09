#pragma once

#include "catbn/error.hpp"
#include "catbn/variable.hpp"
#include "catbn/dag.hpp"
#include "catbn/cpt.hpp"
#include "catbn/network.hpp"
#include "catbn/graph_queries.hpp"
#include "catbn/factor.hpp"
#include "catbn/inference.hpp"
#include "catbn/data_table.hpp"
#include "catbn/cleveland.hpp"
#include "catbn/heart_network.hpp"
#include "catbn/learn/counts.hpp"
#include "catbn/learn/parameters.hpp"
#include "catbn/learn/score.hpp"
#include "catbn/learn/hill_climb.hpp"
#include "catbn/learn/ci_test.hpp"
#include "catbn/learn/constraint.hpp"
#include "catbn/learn/hybrid.hpp"
#include "catbn/naive_bayes.hpp"
#include "catbn/model_io.hpp"
#include "catbn/evaluation.hpp"
