#pragma once

#include "hermpic/error.hpp"
#include "hermpic/matrix.hpp"
#include "hermpic/normal_form.hpp"
#include "hermpic/abgrp.hpp"
#include "hermpic/blackbox.hpp"
#include "hermpic/rings.hpp"
#include "hermpic/units.hpp"
#include "hermpic/classgrp.hpp"
#include "hermpic/hermforms.hpp"
#include "hermpic/pnpic.hpp"
#include "hermpic/brauer.hpp"
#include "hermpic/builtin_scenarios.hpp"
#include "hermpic/json_io.hpp"
