#pragma once

#include "cmv.hpp"
#include "contfrac.hpp"
#include "errors.hpp"
#include "gordon.hpp"
#include "mat2.hpp"
#include "precision.hpp"
#include "scan_io.hpp"
#include "svg.hpp"
#include "tracemap.hpp"
#include "transfer.hpp"
#include "words.hpp"
