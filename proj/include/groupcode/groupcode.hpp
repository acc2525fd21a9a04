#pragma once

#include "errors.hpp"
#include "group.hpp"
#include "hom.hpp"
#include "structure.hpp"
#include "extension.hpp"
#include "encoder.hpp"
#include "trellis.hpp"
#include "control.hpp"
#include "sweep.hpp"
