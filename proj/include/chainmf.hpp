#pragma once

#include "chainmf/collection.hpp"
#include "chainmf/errors.hpp"
#include "chainmf/factorization.hpp"
#include "chainmf/grading.hpp"
#include "chainmf/hom.hpp"
#include "chainmf/json_io.hpp"
#include "chainmf/matrix.hpp"
#include "chainmf/polynomial.hpp"
#include "chainmf/quiver.hpp"
#include "chainmf/smith.hpp"
#include "chainmf/verify.hpp"
