#pragma once

// Umbrella header for the fake-news classification toolkit.

#include "fakenews/benchmark.hpp"
#include "fakenews/config.hpp"
#include "fakenews/corpus.hpp"
#include "fakenews/csv.hpp"
#include "fakenews/error.hpp"
#include "fakenews/forest.hpp"
#include "fakenews/linear.hpp"
#include "fakenews/metrics.hpp"
#include "fakenews/model_io.hpp"
#include "fakenews/neural.hpp"
#include "fakenews/prng.hpp"
#include "fakenews/report.hpp"
#include "fakenews/sparse.hpp"
#include "fakenews/tfidf.hpp"
