#pragma once

#include "heron/brute.hpp"
#include "heron/fixtures.hpp"
#include "heron/pointsearch.hpp"
#include "heron/report.hpp"
#include "heron/selmer.hpp"
