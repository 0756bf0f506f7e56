#pragma once

#include "nilgcs/catalog.hpp"
#include "nilgcs/io.hpp"
#include "nilgcs/poisson.hpp"
#include "nilgcs/semiabelian.hpp"
#include "nilgcs/verification.hpp"
