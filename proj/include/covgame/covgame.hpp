#ifndef COVGAME_COVGAME_HPP
#define COVGAME_COVGAME_HPP

#include "covgame/convex_hull.hpp"
#include "covgame/discounting.hpp"
#include "covgame/errors.hpp"
#include "covgame/geometry_channel.hpp"
#include "covgame/identification.hpp"
#include "covgame/io.hpp"
#include "covgame/linear_feasibility.hpp"
#include "covgame/obs_graph.hpp"
#include "covgame/quadrature.hpp"
#include "covgame/simulation.hpp"
#include "covgame/static_game.hpp"
#include "covgame/strategy_plan.hpp"
#include "covgame/utility.hpp"

#endif  // COVGAME_COVGAME_HPP
