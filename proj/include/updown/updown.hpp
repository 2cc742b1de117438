#pragma once

#include "updown/bounds.hpp"
#include "updown/congruence.hpp"
#include "updown/exact_numbers.hpp"
#include "updown/oracle.hpp"
#include "updown/randomness.hpp"
#include "updown/signatures.hpp"
#include "updown/universal_poly.hpp"
#include "updown/updown_compute.hpp"
