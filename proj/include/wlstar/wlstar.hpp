#pragma once

#include "wlstar/automaton.hpp"
#include "wlstar/automaton_io.hpp"
#include "wlstar/equivalence.hpp"
#include "wlstar/error.hpp"
#include "wlstar/hankel.hpp"
#include "wlstar/learner.hpp"
#include "wlstar/oracle.hpp"
#include "wlstar/random.hpp"
#include "wlstar/semifield.hpp"
#include "wlstar/word.hpp"
