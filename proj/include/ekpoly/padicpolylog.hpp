#pragma once

#include <ekpoly/padicpolylog/disc.hpp>
#include <ekpoly/padicpolylog/pipeline.hpp>
