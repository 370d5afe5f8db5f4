#pragma once

#include <msrlab/error.hpp>
#include <msrlab/field.hpp>
#include <msrlab/matrix.hpp>
#include <msrlab/subspace.hpp>
#include <msrlab/code.hpp>
#include <msrlab/repair.hpp>
#include <msrlab/reduction.hpp>
#include <msrlab/certificates.hpp>
#include <msrlab/bounds.hpp>
#include <msrlab/search.hpp>
#include <msrlab/serialize.hpp>
