#pragma once

#include "rbr/abstract.hpp"
#include "rbr/concrete.hpp"
#include "rbr/desugar.hpp"
#include "rbr/dsl.hpp"
#include "rbr/fwo.hpp"
#include "rbr/generators.hpp"
#include "rbr/protocol.hpp"
#include "rbr/qbf.hpp"
#include "rbr/verifier.hpp"
#include "rbr/window.hpp"
#include "rbr/witness.hpp"
