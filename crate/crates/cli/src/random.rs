//! Seeded random inputs for the property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use qsp_core::cartan::{AdmissiblePair, RootVector};
use qsp_core::qsp::{QspContext, QspParams};
use qsp_core::uqg::{Algebra, Element, Monomial};
use qsp_core::Scalar;

/// A nonzero scalar from a small fixed menu of shapes.
pub fn scalar<R: Rng>(rng: &mut R) -> Scalar {
    match rng.gen_range(0..5) {
        0 => Scalar::from_int(rng.gen_range(1..6) * if rng.gen_bool(0.5) { 1 } else { -1 }),
        1 => Scalar::q_pow(rng.gen_range(-3..=3)),
        2 => Scalar::v_pow(rng.gen_range(-3..=3)) + Scalar::from_int(rng.gen_range(1..4)),
        3 => Scalar::i() * Scalar::q_pow(rng.gen_range(-2..=2)),
        _ => Scalar::from_int(1) / (Scalar::q_pow(1) - Scalar::q_pow(-1)),
    }
}

pub fn word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..rank) as u8).collect()
}

/// A sum of up to `terms` monomials with words of length at most `len`.
pub fn element<R: Rng>(alg: &Algebra, rng: &mut R, terms: usize, len: usize) -> Element {
    let n = alg.rank();
    let mut out = Element::zero();
    for _ in 0..rng.gen_range(1..=terms) {
        let le = rng.gen_range(0..=len);
        let lf = rng.gen_range(0..=len - le.min(len));
        let k = RootVector((0..n).map(|_| rng.gen_range(-2..=2)).collect());
        let m = Monomial {
            e: word(rng, n, le),
            k,
            f: word(rng, n, lf),
        };
        out.add_term(m, scalar(rng));
    }
    out
}

/// A random combination of rearrangements of `word`, homogeneous of its degree.
pub fn homogeneous<R: Rng>(alg: &Algebra, rng: &mut R, word: &[u8]) -> Element {
    let mut out = Element::zero();
    let mut w = word.to_vec();
    for _ in 0..rng.gen_range(1..=3) {
        w.shuffle(rng);
        out += &alg.e_word(&w).scale(&scalar(rng));
    }
    out
}

/// A bar-fixed nonzero scalar.
fn bar_fixed<R: Rng>(rng: &mut R) -> Scalar {
    match rng.gen_range(0..4) {
        0 => Scalar::from_int(rng.gen_range(1..5)),
        1 => Scalar::q_pow(1) + Scalar::q_pow(-1),
        2 => -Scalar::one(),
        _ => Scalar::i() * (Scalar::q_pow(2) + Scalar::one() + Scalar::q_pow(-2)),
    }
}

fn generic<R: Rng>(rng: &mut R) -> Scalar {
    let k = rng.gen_range(1..=3);
    Scalar::q_pow(k) + Scalar::from_int(rng.gen_range(1..4))
}

/// Parameters `c` in `C`, drawn so that each `tau`-orbit satisfies the bar
/// condition about half of the time, and `s` in `S`.
pub fn params<R: Rng>(pair: &AdmissiblePair, ctx: &QspContext, rng: &mut R) -> (Vec<Scalar>, Vec<Scalar>) {
    let d = pair.datum();
    let n = pair.rank();
    let mut c = vec![Scalar::zero(); n];
    for i in pair.outside_x() {
        let t = pair.tau(i);
        if t < i {
            continue;
        }
        let e = pair.theta_rho_exponent(i);
        let a = d.simple(i);
        let orthogonal = d.form(&a, &pair.theta(&a)) == 0;
        let good = rng.gen_bool(0.5);
        if t == i || orthogonal {
            let mut value = bar_fixed(rng).mul_v_pow(e);
            if !good {
                let k = *[-2i64, -1, 1, 2].choose(rng).unwrap();
                value = value.mul_v_pow(k);
            }
            c[i] = value.clone();
            c[t] = value;
        } else {
            let ci = generic(rng);
            let mut ct = ci.bar().mul_v_pow(2 * e);
            if !good {
                ct = ct.mul_v_pow(*[-2i64, 2].choose(rng).unwrap());
            }
            c[i] = ci;
            c[t] = ct;
        }
    }
    let mut s = vec![Scalar::zero(); n];
    for i in pair.i_ns() {
        if rng.gen_bool(0.5) {
            s[i] = scalar(rng);
        }
    }
    if !QspParams::check_s(ctx, &s).is_empty() {
        s = vec![Scalar::zero(); n];
    }
    (c, s)
}
