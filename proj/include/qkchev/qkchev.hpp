#pragma once

#include "qkchev/root_system.hpp"
#include "qkchev/weyl.hpp"
#include "qkchev/reflection_order.hpp"
#include "qkchev/qbg.hpp"
#include "qkchev/qls.hpp"
#include "qkchev/chevalley.hpp"
#include "qkchev/characters.hpp"
