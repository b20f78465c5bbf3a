//! Nonnegativity on `[0, 1]` certified by explicit sums of squares.
//!
//! A univariate `p >= 0` on `[0, 1]` always admits a weighted
//! two-square certificate whose weights depend only on the parity of
//! the degree:
//!
//!     deg p = 2d:     p = s1^2 + lambda (1 - lambda) s2^2
//!     deg p = 2d + 1: p = lambda s1^2 + (1 - lambda) s2^2
//!
//! The construction here is fully algebraic — map `[0,1]` to the
//! half-line, split the transformed polynomial over its complex roots,
//! and map back — so there is no semidefinite programming involved and
//! the result can be verified by expanding polynomials.

use viscut::certify::{sos_decompose, verify_certificate, CertifyError, Parity};
use viscut::unipoly::UniPoly;

fn show(label: &str, coeffs: &[f64]) {
    let p = UniPoly::new(coeffs.to_vec());
    match sos_decompose(&p) {
        Ok(cert) => {
            let parity = match cert.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            };
            println!("{label}: {parity}, d = {}", cert.d);
            println!("    s1 = {:?}", cert.s1.coeffs());
            println!("    s2 = {:?}", cert.s2.coeffs());
            println!(
                "    expansion residual (max |coeff| error): {:.2e}",
                verify_certificate(&p, &cert)
            );
        }
        Err(CertifyError::NotNonnegative) => {
            println!("{label}: rejected — negative somewhere on [0, 1]");
        }
        Err(e) => println!("{label}: failed ({e})"),
    }
}

fn main() {
    // The weight polynomial itself: lambda (1 - lambda) has the trivial
    // certificate s1 = 0, s2 = 1.
    show("lambda (1 - lambda)", &[0.0, 1.0, -1.0]);

    // A cubic that vanishes at 0 and touches zero again at 1/2:
    // 4 lambda (2 lambda - 1)^2 = lambda (4 lambda - 2)^2.
    show("4l - 16l^2 + 16l^3", &[0.0, 4.0, -16.0, 16.0]);

    // Positive on (0, 1] but with a zero of even order inside: the
    // certificate squares pick the double root up exactly.
    // (l - 1/3)^2 (l + 1/4) expanded:
    show(
        "(l - 1/3)^2 (l + 1/4)",
        &[1.0 / 36.0, -1.0 / 18.0, -1.0 / 12.0, 1.0],
    );

    // Strictly positive with complex roots only.
    show("l^2 - l + 1", &[1.0, -1.0, 1.0]);

    // And a rejection: dips below zero inside the interval.
    show("l^2 - l + 1/5", &[0.2, -1.0, 1.0]);

    // Certificates are exact enough to chain: build a degree-8 product
    // of the pieces above and decompose it too.
    let a = UniPoly::new(vec![0.0, 1.0, -1.0]);
    let b = UniPoly::new(vec![1.0, -1.0, 1.0]);
    let prod = a.mul(&a).mul(&b).mul(&b);
    show("(l(1-l))^2 (l^2-l+1)^2", prod.coeffs());
}
