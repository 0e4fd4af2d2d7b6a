#pragma once

#include "pcclone/channels.hpp"
#include "pcclone/cloners.hpp"
#include "pcclone/errors.hpp"
#include "pcclone/estimation.hpp"
#include "pcclone/optimizer.hpp"
#include "pcclone/qlinalg.hpp"
#include "pcclone/states.hpp"
