//! Agler positivity for `(T_1 + T_2) / 2` in the parameterized pair and
//! a certified explicit range of `x` beyond `2/11`.

mod certify;
mod integral;
mod sums;

pub use certify::{
    certified_epsilon, certified_epsilon_with, certified_x_max, certified_x_max_with, certify_sum,
    certify_sum_with, k0_cap, positivity_over_all_k, sweep_csv, x_max_for_n, AglerCertificate,
    PerN, Positivity, TailBound, PI_UPPER, SQRT2_UPPER, TAIL_CONSTANT,
};
pub use integral::{integral_moment, IntegralMoments};
pub use sums::{p_n_bruteforce, p_n_closed, Coefficients};
