#![allow(dead_code)]

use std::sync::OnceLock;

use strata_core::catalog::catalog;
use strata_core::config::Setup;
use strata_core::AffineElement;

pub fn setups() -> &'static [(&'static str, Setup)] {
    static CELL: OnceLock<Vec<(&'static str, Setup)>> = OnceLock::new();
    CELL.get_or_init(|| catalog().into_iter().map(|(n, c)| (n, c.build().unwrap())).collect())
}

pub fn setup(name: &str) -> &'static Setup {
    &setups().iter().find(|(n, _)| *n == name).unwrap().1
}

/// `omega_i * s_{w_1} * ... * s_{w_k}`, indices reduced modulo the available
/// generators.
pub fn element(s: &Setup, omega: usize, word: &[usize]) -> AffineElement {
    let g = &s.group;
    let om = g.omega_elements();
    let simple = g.simple_reflections();
    word.iter().fold(om[omega % om.len()], |acc, &i| g.multiply(&acc, &simple[i % simple.len()]))
}

/// Exponents of each simple factor of a catalog type label.
pub fn exponents(label: &str) -> Vec<Vec<u32>> {
    label
        .split('x')
        .map(|f| match f {
            "A1" => vec![1],
            "A2" => vec![1, 2],
            "B2" | "C2" => vec![1, 3],
            "G2" => vec![1, 5],
            other => panic!("no exponents recorded for {other}"),
        })
        .collect()
}

/// Coefficients up to degree `n` of the Poincare series of the affine Weyl
/// group: `prod (1 + q + ... + q^e) / (1 - q^e)` over the exponents.
pub fn affine_poincare(label: &str, n: usize) -> Vec<u64> {
    let mut series = vec![0u64; n + 1];
    series[0] = 1;
    for e in exponents(label).into_iter().flatten() {
        let e = e as usize;
        // multiply by 1 + q + ... + q^e
        let mut next = vec![0u64; n + 1];
        for (i, c) in series.iter().enumerate() {
            for j in 0..=e {
                if i + j <= n {
                    next[i + j] += c;
                }
            }
        }
        // divide by 1 - q^e
        for i in e..=n {
            next[i] += next[i - e];
        }
        series = next;
    }
    series
}
