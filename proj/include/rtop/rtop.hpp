#pragma once

#include "rtop/core.hpp"
#include "rtop/corpus.hpp"
#include "rtop/enumerate.hpp"
#include "rtop/hom.hpp"
#include "rtop/homology.hpp"
#include "rtop/json_io.hpp"
#include "rtop/poset.hpp"
#include "rtop/rset.hpp"
#include "rtop/simplicial.hpp"
#include "rtop/strong_homotopy.hpp"
#include "rtop/verify.hpp"
