use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::diagram::{Lattice, WeightDiagram, Window};
use crate::certificate::Certificate;
use crate::exec::{self, Exec};
use crate::measures::{AtomicMeasure2D, Axis};
use crate::numerics::format_rational;

const RANDOM_PATHS: usize = 10;
const PATH_SEED: u64 = 0x5eed_0001;

/// `beta_{k+e1}^2 alpha_k^2 = alpha_{k+e2}^2 beta_k^2` at every `k` in the window.
pub fn commutativity_check(d: &WeightDiagram, window: Window) -> Certificate {
    commutativity_check_with(Exec::default(), d, window)
}

pub fn commutativity_check_with(exec: Exec, d: &WeightDiagram, window: Window) -> Certificate {
    let points = window.points();
    let bad = exec::map(exec, &points, |&(k1, k2)| {
        let right_up = d.alpha_sq(k1, k2) * d.beta_sq(k1 + 1, k2);
        let up_right = d.beta_sq(k1, k2) * d.alpha_sq(k1, k2 + 1);
        (right_up != up_right).then_some(((k1, k2), right_up, up_right))
    });
    let cert = Certificate::pass("commutativity").with_value("window", window);
    match bad.into_iter().flatten().next() {
        None => cert,
        Some(((k1, k2), right_up, up_right)) => Certificate::fail("commutativity")
            .with_value("window", window)
            .with_witness(
                format!("k=({k1},{k2})"),
                [
                    ("k1", k1.to_string()),
                    ("k2", k2.to_string()),
                    ("alpha_beta", format_rational(&right_up)),
                    ("beta_alpha", format_rational(&up_right)),
                ],
            ),
    }
}

/// `gamma_k` along both staircases and along random monotone paths.
pub fn path_independence_check(d: &WeightDiagram, k: Lattice) -> Certificate {
    let (k1, k2) = k;
    let mut horizontal_first = vec![Axis::X; k1 as usize];
    horizontal_first.extend(vec![Axis::Y; k2 as usize]);
    let mut vertical_first = vec![Axis::Y; k2 as usize];
    vertical_first.extend(vec![Axis::X; k1 as usize]);

    let mut rng = StdRng::seed_from_u64(PATH_SEED ^ (k1 << 32) ^ k2);
    let mut paths = vec![horizontal_first, vertical_first];
    for _ in 0..RANDOM_PATHS {
        let mut p = paths[0].clone();
        p.shuffle(&mut rng);
        paths.push(p);
    }

    let reference = d.moment_along(&paths[0]);
    let cert = Certificate::pass("path_independence")
        .with_value("k", format!("({k1},{k2})"))
        .with_value("gamma", format_rational(&reference))
        .with_value("paths", paths.len());
    for (i, p) in paths.iter().enumerate().skip(1) {
        let gamma = d.moment_along(p);
        if gamma != reference {
            let route: String = p.iter().map(|a| if *a == Axis::X { 'R' } else { 'U' }).collect();
            return Certificate::fail("path_independence")
                .with_value("k", format!("({k1},{k2})"))
                .with_witness(
                    format!("path {i}"),
                    [
                        ("path", route),
                        ("gamma", format_rational(&gamma)),
                        ("reference", format_rational(&reference)),
                    ],
                );
        }
    }
    cert
}

/// `gamma_k(d) = int s^k1 t^k2 dmu` at every `k` in the window.
pub fn check_berger_2d(d: &WeightDiagram, mu: &AtomicMeasure2D, window: Window) -> Certificate {
    check_berger_2d_with(Exec::default(), d, mu, window)
}

pub fn check_berger_2d_with(
    exec: Exec,
    d: &WeightDiagram,
    mu: &AtomicMeasure2D,
    window: Window,
) -> Certificate {
    let points = window.points();
    let bad = exec::map(exec, &points, |&(k1, k2)| {
        let shift = d.moment(k1, k2);
        let measure = mu.moment(k1, k2);
        (shift != measure).then_some(((k1, k2), shift, measure))
    });
    let base = |c: Certificate| {
        c.with_value("window", window)
            .with_value("atoms", mu.len())
            .with_value("probability", mu.is_probability())
    };
    match bad.into_iter().flatten().next() {
        None => base(Certificate::pass("berger_2d")),
        Some(((k1, k2), shift, measure)) => base(Certificate::fail("berger_2d")).with_witness(
            format!("k=({k1},{k2})"),
            [
                ("k1", k1.to_string()),
                ("k2", k2.to_string()),
                ("shift_moment", format_rational(&shift)),
                ("measure_moment", format_rational(&measure)),
            ],
        ),
    }
}
