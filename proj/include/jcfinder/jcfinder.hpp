#pragma once

#include "jcfinder/clone_metrics.hpp"
#include "jcfinder/config.hpp"
#include "jcfinder/errors.hpp"
#include "jcfinder/features.hpp"
#include "jcfinder/fingerprint.hpp"
#include "jcfinder/hash.hpp"
#include "jcfinder/metrics.hpp"
#include "jcfinder/reference_index.hpp"
#include "jcfinder/refinery.hpp"
#include "jcfinder/scanner.hpp"
#include "jcfinder/source_model.hpp"
#include "jcfinder/version.hpp"
