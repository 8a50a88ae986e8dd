#pragma once

#include "orthoglide/config.hpp"
#include "orthoglide/csv.hpp"
#include "orthoglide/dyn_translation.hpp"
#include "orthoglide/dyn_wrist.hpp"
#include "orthoglide/energy_audit.hpp"
#include "orthoglide/errors.hpp"
#include "orthoglide/flags.hpp"
#include "orthoglide/kin_translation.hpp"
#include "orthoglide/kin_wrist.hpp"
#include "orthoglide/model.hpp"
#include "orthoglide/pipeline.hpp"
#include "orthoglide/report.hpp"
#include "orthoglide/trajectory.hpp"
#include "orthoglide/validation.hpp"
