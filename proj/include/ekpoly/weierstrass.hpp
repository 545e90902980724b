#pragma once

#include <ekpoly/weierstrass/algebraize.hpp>
#include <ekpoly/weierstrass/curve.hpp>
#include <ekpoly/weierstrass/divpoly.hpp>
#include <ekpoly/weierstrass/expansions.hpp>
#include <ekpoly/weierstrass/isogeny.hpp>
#include <ekpoly/weierstrass/points.hpp>
#include <ekpoly/weierstrass/poly.hpp>
