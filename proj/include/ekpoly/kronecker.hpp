#pragma once

#include <ekpoly/kronecker/xi.hpp>
#include <ekpoly/kronecker/translated.hpp>
#include <ekpoly/kronecker/ektable.hpp>
#include <ekpoly/kronecker/thetap.hpp>
