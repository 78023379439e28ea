#pragma once

#include <initializer_list>

#include "cartan/types.hpp"

inline cartan::Vector vec(std::initializer_list<double> xs) {
  cartan::Vector v(static_cast<Eigen::Index>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}
