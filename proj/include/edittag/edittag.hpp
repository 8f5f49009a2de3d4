#pragma once

#include "edittag/alignment.hpp"
#include "edittag/decoder.hpp"
#include "edittag/errors.hpp"
#include "edittag/evaluation.hpp"
#include "edittag/io.hpp"
#include "edittag/morphology.hpp"
#include "edittag/strings.hpp"
#include "edittag/tag.hpp"
#include "edittag/taggers.hpp"
#include "edittag/vocabulary.hpp"
#include "edittag/wire.hpp"
