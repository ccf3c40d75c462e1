#include "syssamp/presets.hpp"

namespace syssamp {

SamplingContext murthy_context(double intraclass, double w2, double ell) {
  SamplingContext ctx;
  ctx.N = kMurthyN;
  ctx.n = kMurthyN_sample;
  ctx.w2 = w2;
  ctx.ell = ell;
  auto& m = ctx.moments;
  m.mean_y = 282.6136;
  m.mean_x = 6.9943;
  m.s2_y = 24114.67;
  m.s2_x = 8.76;
  m.s2_y2 = 18086.0025;
  m.rho = 0.8710;
  m.rho_y = intraclass;
  m.rho_x = intraclass;
  m.update_cv();
  return ctx;
}

LinearPopulationSpec murthy_standin_spec(std::uint64_t seed) {
  LinearPopulationSpec spec;
  spec.size = kMurthyN;
  spec.mean_x = 6.9943;
  spec.s2_x = 8.76;
  spec.mean_y = 282.6136;
  spec.s2_y = 24114.67;
  spec.rho = 0.8710;
  spec.seed = seed;
  spec.sort_by_x = true;
  return spec;
}

}  // namespace syssamp
