use std::f64::consts::PI;
use std::sync::OnceLock;

pub const ZETA_3: f64 = 1.202_056_903_159_594_3;
pub const ZETA_5: f64 = 1.036_927_755_143_37;

const EVEN_TABLE_LEN: usize = 96;

/// ζ(s) for the integer orders the unit-circle forms need.
pub fn zeta_small(s: u32) -> f64 {
    match s {
        2 => PI * PI / 6.0,
        3 => ZETA_3,
        4 => PI.powi(4) / 90.0,
        5 => ZETA_5,
        _ => panic!("zeta_small called with s = {s}"),
    }
}

/// ζ(2m) for m ≥ 1.
pub fn zeta_even(m: usize) -> f64 {
    assert!(m >= 1, "zeta_even needs m >= 1");
    if m < EVEN_TABLE_LEN {
        even_table()[m]
    } else {
        1.0
    }
}

fn even_table() -> &'static [f64; EVEN_TABLE_LEN] {
    static TABLE: OnceLock<[f64; EVEN_TABLE_LEN]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [1.0; EVEN_TABLE_LEN];
        t[1] = PI * PI / 6.0;
        t[2] = PI.powi(4) / 90.0;
        for (m, slot) in t.iter_mut().enumerate().skip(3) {
            let p = 2 * m as i32;
            // terms below 1e-20 are invisible in f64; sum small to large
            let last = (1e20f64).powf(1.0 / p as f64).ceil() as usize;
            *slot = (1..=last.max(2)).rev().map(|n| (n as f64).powi(-p)).sum();
        }
        t
    })
}

/// B_{2j} / (2j)! expressed through ζ(2j), which stays representable for every j.
pub fn bernoulli_over_factorial(j: usize) -> f64 {
    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
    sign * 2.0 * zeta_even(j) / (2.0 * PI).powi(2 * j as i32)
}
