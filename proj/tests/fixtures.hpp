#pragma once

#include "agv/codesearch.hpp"

namespace fixtures {

/// [7,4] binary Hamming code; it contains its [7,3] dual.
inline agv::Subspace hamming_7_4() {
  return agv::row_space(agv::Field(2), 7,
                        {1, 0, 0, 0, 1, 1, 0,  //
                         0, 1, 0, 0, 1, 0, 1,  //
                         0, 0, 1, 0, 0, 1, 1,  //
                         0, 0, 0, 1, 1, 1, 1});
}

/// The [[5,1,3]] code with generators XZZXI, IXZZX, XIXZZ, ZXIXZ in (x|z) form.
inline agv::IsotropicCode five_qubit_code() {
  return agv::IsotropicCode(agv::row_space(agv::Field(2), 10,
                                           {1, 0, 0, 1, 0, 0, 1, 1, 0, 0,  // XZZXI
                                            0, 1, 0, 0, 1, 0, 0, 1, 1, 0,  // IXZZX
                                            1, 0, 1, 0, 0, 0, 0, 0, 1, 1,  // XIXZZ
                                            0, 1, 0, 1, 0, 1, 0, 0, 0, 1}));  // ZXIXZ
}

}  // namespace fixtures
