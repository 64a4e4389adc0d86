#include "gammacm/corpus.hpp"

namespace gammacm::corpus {

const std::vector<Case>& golden() {
  static const std::vector<Case> cases = {
      {"example1_q05", R"json({
  "name": "example1_q05",
  "comment": "unit scales, alpha/beta = q^(b-a) at the boundary",
  "q": 0.5,
  "numerator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": 1,
      "a": 1,
      "alpha": 2
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"example1_q06", R"json({
  "name": "example1_q06",
  "comment": "unit scales, v(q) < 0",
  "q": 0.6,
  "numerator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": 1,
      "a": 1,
      "alpha": 2
    }
  ]
})json", Status::CertifiedFalse, ""},
      {"example2", R"json({
  "name": "example2",
  "comment": "A=1/6, B=(1/3,1/2), a=0, b=3, c=2",
  "q": "1/2",
  "numerator": [
    {
      "A": "1/6",
      "a": 0,
      "alpha": 5
    }
  ],
  "denominator": [
    {
      "A": "1/3",
      "a": 3,
      "alpha": 1
    },
    {
      "A": "1/2",
      "a": 2,
      "alpha": 1
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"example2_b0c0", R"json({
  "name": "example2_b0c0",
  "comment": "b=c=0 breaks the mass condition",
  "q": "1/2",
  "numerator": [
    {
      "A": "1/6",
      "a": 0,
      "alpha": 5
    }
  ],
  "denominator": [
    {
      "A": "1/3",
      "a": 0,
      "alpha": 1
    },
    {
      "A": "1/2",
      "a": 0,
      "alpha": 1
    }
  ]
})json", Status::CertifiedFalse, "log2_cm"},
      {"example2_a1", R"json({
  "name": "example2_a1",
  "comment": "b - 2a < 0",
  "q": "1/2",
  "numerator": [
    {
      "A": "1/6",
      "a": 1,
      "alpha": 5
    }
  ],
  "denominator": [
    {
      "A": "1/3",
      "a": 0,
      "alpha": 1
    },
    {
      "A": "1/2",
      "a": 0,
      "alpha": 1
    }
  ]
})json", Status::CertifiedFalse, "log2_cm"},
      {"example3", R"json({
  "name": "example3",
  "comment": "irrational classes u,v,w,z with a_i = 0",
  "q": "1/2",
  "numerator": [
    {
      "A": 0.7071067811865476,
      "a": 0,
      "alpha": 1,
      "irr_class": "u"
    },
    {
      "A": 0.34641016151377546,
      "a": 0,
      "alpha": 1,
      "irr_class": "v"
    },
    {
      "A": 3.141592653589793,
      "a": 0,
      "alpha": 1,
      "irr_class": "w"
    },
    {
      "A": 1,
      "a": 0,
      "alpha": 1,
      "irr_class": "z"
    }
  ],
  "denominator": [
    {
      "A": 1.4142135623730951,
      "a": 3,
      "alpha": 2,
      "irr_class": "u"
    },
    {
      "A": 1.7320508075688772,
      "a": 5,
      "alpha": 2,
      "irr_class": "v"
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"example3_a07", R"json({
  "name": "example3_a07",
  "comment": "irrational classes u,v,w,z with a_i = 0.7",
  "q": "1/2",
  "numerator": [
    {
      "A": 0.7071067811865476,
      "a": 0.7,
      "alpha": 1,
      "irr_class": "u"
    },
    {
      "A": 0.34641016151377546,
      "a": 0.7,
      "alpha": 1,
      "irr_class": "v"
    },
    {
      "A": 3.141592653589793,
      "a": 0.7,
      "alpha": 1,
      "irr_class": "w"
    },
    {
      "A": 1,
      "a": 0.7,
      "alpha": 1,
      "irr_class": "z"
    }
  ],
  "denominator": [
    {
      "A": 1.4142135623730951,
      "a": 4.4,
      "alpha": 2,
      "irr_class": "u"
    },
    {
      "A": 1.7320508075688772,
      "a": 8.5,
      "alpha": 2,
      "irr_class": "v"
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"example3_beta04", R"json({
  "name": "example3_beta04",
  "comment": "beta_1 = 0.4 breaks sum alpha A <= sum beta B",
  "q": "1/2",
  "numerator": [
    {
      "A": 0.7071067811865476,
      "a": 0,
      "alpha": 1,
      "irr_class": "u"
    },
    {
      "A": 0.34641016151377546,
      "a": 0,
      "alpha": 1,
      "irr_class": "v"
    },
    {
      "A": 3.141592653589793,
      "a": 0,
      "alpha": 1,
      "irr_class": "w"
    },
    {
      "A": 1,
      "a": 0,
      "alpha": 1,
      "irr_class": "z"
    }
  ],
  "denominator": [
    {
      "A": 1.4142135623730951,
      "a": 3,
      "alpha": 0.4,
      "irr_class": "u"
    },
    {
      "A": 1.7320508075688772,
      "a": 5,
      "alpha": 2,
      "irr_class": "v"
    }
  ]
})json", Status::CertifiedFalse, "lcm_balance"},
      {"legendre_025", R"json({
  "name": "legendre_025",
  "comment": "duplication formula at theta = 1/4",
  "q": "classical",
  "theta": 0.25,
  "numerator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 1
    },
    {
      "A": 1,
      "a": "1/2",
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": 2,
      "a": 0,
      "alpha": 1
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"legendre_02499", R"json({
  "name": "legendre_02499",
  "comment": "duplication formula below the threshold",
  "q": "classical",
  "theta": 0.2499,
  "numerator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 1
    },
    {
      "A": 1,
      "a": "1/2",
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": 2,
      "a": 0,
      "alpha": 1
    }
  ]
})json", Status::CertifiedFalse, "theta_lt_rho"},
      {"p1_a05", R"json({
  "name": "p1_a05",
  "comment": "p = 1, alpha = 1, beta = 2, a = 1/2",
  "q": "classical",
  "theta": 2,
  "numerator": [
    {
      "A": 1,
      "a": "1/2",
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": "1/2",
      "a": "1/2",
      "alpha": 2
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"p1_a03", R"json({
  "name": "p1_a03",
  "comment": "p = 1, alpha = 1, beta = 2, a = 0.3",
  "q": "classical",
  "theta": 2,
  "numerator": [
    {
      "A": 1,
      "a": 0.3,
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": "1/2",
      "a": 0.3,
      "alpha": 2
    }
  ]
})json", Status::CertifiedFalse, ""},
      {"vhat_majorized", R"json({
  "name": "vhat_majorized",
  "comment": "alpha = (1,2), beta = (3/2,3/2), a = 1",
  "q": "classical",
  "theta": "9/8",
  "numerator": [
    {
      "A": 1,
      "a": 1,
      "alpha": 1
    },
    {
      "A": "1/2",
      "a": 1,
      "alpha": 2
    }
  ],
  "denominator": [
    {
      "A": "2/3",
      "a": 1,
      "alpha": "3/2"
    },
    {
      "A": "2/3",
      "a": 1,
      "alpha": "3/2"
    }
  ]
})json", Status::CertifiedTrue, ""},
      {"unbalanced", R"json({
  "name": "unbalanced",
  "comment": "sum alpha A = 2, sum beta B = 1",
  "q": "classical",
  "numerator": [
    {
      "A": 2,
      "a": 0,
      "alpha": 1
    }
  ],
  "denominator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 1
    }
  ]
})json", Status::CertifiedFalse, "balance"},
      {"tied_weights", R"json({
  "name": "tied_weights",
  "comment": "weights equal only up to rounding",
  "q": 0.5,
  "numerator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 0.30000000000000004
    }
  ],
  "denominator": [
    {
      "A": 1,
      "a": 0,
      "alpha": 0.3
    }
  ]
})json", Status::Inconclusive, ""},
  };
  return cases;
}

}  // namespace gammacm::corpus
