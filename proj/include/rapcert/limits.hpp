#pragma once

namespace rapcert {

// all bounds are defaults only; callers and the CLI may override
struct limits {
  int max_table_order = 20000;      // refuse to build tables beyond this order
  int exhaustive_assoc_order = 512; // full triple scan up to here, Light's test above
  int max_aut_order = 200;          // |g| bound for automorphism backtracking
  int max_aut_size = 5000;          // bail out once this many automorphisms were found
  int max_h1_gamma = 16;            // |Gamma'| bound for cocycle enumeration
  int max_h1_module = 60;           // |A| bound for cocycle enumeration
  long long max_local_product = 10000000; // local-tuple scan bound for surjectivity
};

inline const limits &default_limits() {
  static const limits lim{};
  return lim;
}

} // namespace rapcert
