#ifndef DRA_DRA_HPP
#define DRA_DRA_HPP

#include "dra/algebra.hpp"
#include "dra/bitset.hpp"
#include "dra/common.hpp"
#include "dra/duality.hpp"
#include "dra/filters.hpp"
#include "dra/fixtures.hpp"
#include "dra/io.hpp"
#include "dra/operators.hpp"
#include "dra/pfun.hpp"
#include "dra/space.hpp"

#endif // DRA_DRA_HPP
