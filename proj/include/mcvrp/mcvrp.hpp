#pragma once

#include "assignment.hpp"
#include "certify.hpp"
#include "difference.hpp"
#include "export.hpp"
#include "instance.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "routes.hpp"
#include "ufeas.hpp"
