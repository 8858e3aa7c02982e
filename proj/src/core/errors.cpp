#include "delta/core/errors.hpp"
