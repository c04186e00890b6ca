#pragma once

#include "qbs/assess.hpp"
#include "qbs/bootstrap.hpp"
#include "qbs/chi_square.hpp"
#include "qbs/circuit.hpp"
#include "qbs/counter.hpp"
#include "qbs/error.hpp"
#include "qbs/qram.hpp"
#include "qbs/query.hpp"
#include "qbs/replication.hpp"
#include "qbs/rng.hpp"
#include "qbs/simulator.hpp"
#include "qbs/table.hpp"
#include "qbs/version.hpp"
