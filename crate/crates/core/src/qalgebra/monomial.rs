//! PBW monomials `α^k β^b β*^c` (with `α^{-k}` read as `α*^k`) and their
//! products.
//!
//! Multiplying two basis monomials only has to commute the `β`-block of the
//! left factor past the `α`-block of the right one and then straighten a
//! mixed `α^a α*^j` (or `α*^a α^j`) pair. With `γ = ββ*`:
//!
//! ```text
//! β^b β*^c α^k      = q^{-k(b+c)} α^k β^b β*^c          (k signed)
//! α^a α*^a          = Π_{i=1..a}   (1 - q^{2i} γ)
//! α*^a α^a          = Π_{i=0..a-1} (1 - q^{-2i} γ)
//! γ α*  = q^2 α* γ,   γ α = q^{-2} α γ
//! ```

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::laurent::QLaurent;
use crate::rational::Rational;

/// One of the four generators `α, α*, β, β*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Alpha,
    AlphaStar,
    Beta,
    BetaStar,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Alpha,
        Generator::AlphaStar,
        Generator::Beta,
        Generator::BetaStar,
    ];

    pub fn star(self) -> Generator {
        match self {
            Generator::Alpha => Generator::AlphaStar,
            Generator::AlphaStar => Generator::Alpha,
            Generator::Beta => Generator::BetaStar,
            Generator::BetaStar => Generator::Beta,
        }
    }

    /// ASCII token used by the expression language.
    pub fn token(self) -> char {
        match self {
            Generator::Alpha => 'a',
            Generator::AlphaStar => 'A',
            Generator::Beta => 'b',
            Generator::BetaStar => 'B',
        }
    }

    pub fn monomial(self) -> Pbw {
        match self {
            Generator::Alpha => Pbw::new(1, 0, 0),
            Generator::AlphaStar => Pbw::new(-1, 0, 0),
            Generator::Beta => Pbw::new(0, 1, 0),
            Generator::BetaStar => Pbw::new(0, 0, 1),
        }
    }
}

/// Basis monomial `α^k β^b β*^c`; `k < 0` stands for `α*^{-k}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Pbw {
    pub k: i32,
    pub b: u32,
    pub c: u32,
}

impl Pbw {
    pub const UNIT: Pbw = Pbw { k: 0, b: 0, c: 0 };

    pub const fn new(k: i32, b: u32, c: u32) -> Self {
        Pbw { k, b, c }
    }

    pub fn is_unit(&self) -> bool {
        *self == Pbw::UNIT
    }

    pub fn degree(&self) -> u32 {
        self.k.unsigned_abs() + self.b + self.c
    }

    /// `(α^k β^b β*^c)* = β^c β*^b α*^k = q^{k(b+c)} α^{-k} β^c β*^b`.
    pub fn star(&self) -> (Pbw, i32) {
        (
            Pbw::new(-self.k, self.c, self.b),
            self.k * (self.b + self.c) as i32,
        )
    }

    /// Left-to-right generator word spelling this monomial.
    pub fn word(&self) -> Vec<Generator> {
        let a = if self.k >= 0 {
            Generator::Alpha
        } else {
            Generator::AlphaStar
        };
        let mut w = vec![a; self.k.unsigned_abs() as usize];
        w.extend(std::iter::repeat_n(Generator::Beta, self.b as usize));
        w.extend(std::iter::repeat_n(Generator::BetaStar, self.c as usize));
        w
    }
}

impl fmt::Display for Pbw {
    /// `a^k*b^m*B^n` with unit exponents and zero factors omitted; `1` for the
    /// unit monomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |tok: char, e: u32| match e {
            0 => {}
            1 => parts.push(tok.to_string()),
            e => parts.push(format!("{tok}^{e}")),
        };
        if self.k >= 0 {
            push('a', self.k as u32);
        } else {
            push('A', self.k.unsigned_abs());
        }
        push('b', self.b);
        push('B', self.c);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

impl fmt::Debug for Pbw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pbw({self})")
    }
}

/// Expansion of `α^{k1} α^{k2}` as `Σ coeff · α^k γ^e`.
type AlphaProduct = Rc<Vec<(i32, u32, QLaurent)>>;

thread_local! {
    static ALPHA_PRODUCTS: RefCell<HashMap<(i32, i32), AlphaProduct>> =
        RefCell::new(HashMap::new());
}

/// Coefficients of `Π_{i=first..first+m-1} (1 - q^{2 step i} γ)` in `γ`.
fn gamma_product(m: u32, first: i32, step: i32) -> Vec<QLaurent> {
    let mut poly = vec![QLaurent::one()];
    for i in 0..m as i32 {
        let factor = QLaurent::monomial(Rational::from_int(-1), 2 * step * (first + i));
        let mut next = vec![QLaurent::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e].add_assign_ref(c);
            next[e + 1].add_assign_ref(&c.mul(&factor));
        }
        poly = next;
    }
    poly
}

fn compute_alpha_product(k1: i32, k2: i32) -> Vec<(i32, u32, QLaurent)> {
    if (k1 >= 0 && k2 >= 0) || (k1 <= 0 && k2 <= 0) {
        return vec![(k1 + k2, 0, QLaurent::one())];
    }
    let (a, j) = (k1.unsigned_abs(), k2.unsigned_abs());
    let m = a.min(j);
    // α^a α*^j: factor α^m α*^m; α*^a α^j: factor α*^m α^m.
    let alpha_first = k1 > 0;
    let poly = if alpha_first {
        gamma_product(m, 1, 1)
    } else {
        gamma_product(m, 0, -1)
    };
    let rest = a as i32 - j as i32; // leftover power, sign relative to k1
    let k = if alpha_first { rest } else { -rest };
    // leftover sits to the right of γ^e when a < j and must be commuted left
    let shift_per_e = if a >= j {
        0
    } else if alpha_first {
        // γ^e α*^{j-a} = q^{2e(j-a)} α*^{j-a} γ^e
        2 * (j - a) as i32
    } else {
        // γ^e α^{j-a} = q^{-2e(j-a)} α^{j-a} γ^e
        -2 * (j - a) as i32
    };
    poly.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (k, e as u32, c.shift(shift_per_e * e as i32)))
        .collect()
}

fn alpha_product(k1: i32, k2: i32) -> AlphaProduct {
    ALPHA_PRODUCTS.with(|cache| {
        if let Some(p) = cache.borrow().get(&(k1, k2)) {
            return p.clone();
        }
        let p = Rc::new(compute_alpha_product(k1, k2));
        cache.borrow_mut().insert((k1, k2), p.clone());
        p
    })
}

/// Calls `f(monomial, q_shift, coeff)` for each term of the normal form of
/// `x · y`; the full coefficient is `q^{q_shift} · coeff`.
pub fn for_each_product_term(x: &Pbw, y: &Pbw, mut f: impl FnMut(Pbw, i32, &QLaurent)) {
    let commute = -y.k * (x.b + x.c) as i32;
    let b = x.b + y.b;
    let c = x.c + y.c;
    let prod = alpha_product(x.k, y.k);
    for (k, e, coeff) in prod.iter() {
        f(Pbw::new(*k, b + e, c + e), commute, coeff);
    }
}

/// Normal form of the product of two basis monomials.
pub fn pbw_product(x: &Pbw, y: &Pbw) -> Vec<(Pbw, QLaurent)> {
    let mut out = Vec::new();
    for_each_product_term(x, y, |m, s, c| out.push((m, c.shift(s))));
    out
}
