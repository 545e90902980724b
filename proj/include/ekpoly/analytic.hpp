#pragma once

#include <ekpoly/analytic/gamma.hpp>
#include <ekpoly/analytic/lattice.hpp>
#include <ekpoly/analytic/ekl.hpp>
#include <ekpoly/analytic/hodge.hpp>
#include <ekpoly/analytic/identities.hpp>
