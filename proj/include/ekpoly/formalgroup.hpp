#pragma once

#include <ekpoly/formalgroup/formal_group.hpp>
