#ifndef BARGMANN_BARGMANN_HPP
#define BARGMANN_BARGMANN_HPP

#include "estimates.hpp"
#include "fock.hpp"
#include "forms.hpp"
#include "multiindex.hpp"
#include "parse.hpp"
#include "polynomial.hpp"
#include "scalar.hpp"
#include "spectral.hpp"
#include "weyl.hpp"

#endif  // BARGMANN_BARGMANN_HPP
