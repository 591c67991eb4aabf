use super::poly::{Mono, MultiPoly};
use super::ExactError;

/// Greatest common divisor, normalised so its graded-lex leading coefficient is 1.
///
/// `gcd(0, b)` is `b` normalised; `gcd(0, 0)` is 0.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    gcd_raw(a, b).monic()
}

/// gcd of a list of polynomials, stopping early once it becomes constant.
pub fn poly_gcd_many<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>) -> Option<MultiPoly> {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.clone(),
            Some(g) => {
                if g.is_constant() && !g.is_zero() {
                    return Some(MultiPoly::one(g.nvars()));
                }
                gcd_raw(&g, p)
            }
        });
    }
    acc.map(|g| g.monic())
}

/// Product of the distinct irreducible factors of `p`, normalised.
///
/// Computed as `p / gcd(p, ∂p/∂x_0, …, ∂p/∂x_n)`, which is valid in
/// characteristic zero.
pub fn squarefree_part(p: &MultiPoly) -> Result<MultiPoly, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(MultiPoly::one(p.nvars()));
    }
    let mut g = p.clone();
    for v in 0..p.nvars() {
        if g.is_constant() {
            break;
        }
        let dp = p.derivative(v);
        if !dp.is_zero() {
            g = gcd_raw(&g, &dp);
        }
    }
    let q = p.div_exact(&g).expect("gcd divides its argument");
    Ok(q.monic())
}

fn mono_poly(m: Mono) -> MultiPoly {
    MultiPoly::monomial(m, super::Scalar::one())
}

fn gcd_raw(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg = ma.gcd(&mb);
    if a.is_monomial() || b.is_monomial() {
        return mono_poly(mg);
    }
    let mut a = a.div_exact(&mono_poly(ma)).unwrap();
    let mut b = b.div_exact(&mono_poly(mb)).unwrap();
    let lift = |g: MultiPoly| -> MultiPoly {
        if mg.degree() == 0 {
            g
        } else {
            &g * &mono_poly(mg.clone())
        }
    };

    // Variables occurring in only one argument cannot occur in the gcd.
    loop {
        if a.is_constant() || b.is_constant() {
            return lift(MultiPoly::one(n));
        }
        let mut changed = false;
        for v in 0..n {
            let ia = a.involves(v);
            let ib = b.involves(v);
            if ia && !ib {
                a = content_in(&a, v);
                changed = true;
            } else if ib && !ia {
                b = content_in(&b, v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if a.is_constant() || b.is_constant() {
        return lift(MultiPoly::one(n));
    }

    // Recurse on the least frequent common variable.
    let v = (0..n)
        .filter(|&v| a.involves(v))
        .min_by_key(|&v| {
            let fa = a.terms().filter(|(m, _)| m.exps()[v] > 0).count();
            let fb = b.terms().filter(|(m, _)| m.exps()[v] > 0).count();
            (fa + fb, v)
        })
        .expect("a nonconstant polynomial involves some variable");

    let ua = a.coefficients_in(v);
    let ub = b.coefficients_in(v);
    let ca = gcd_list(&ua);
    let cb = gcd_list(&ub);
    let c = gcd_raw(&ca, &cb);
    let pa: Vec<MultiPoly> = ua.iter().map(|x| x.div_exact(&ca).unwrap()).collect();
    let pb: Vec<MultiPoly> = ub.iter().map(|x| x.div_exact(&cb).unwrap()).collect();
    let g = subresultant_gcd(pa, pb);
    let g = MultiPoly::from_coefficients_in(n, v, &g);
    lift(&c * &g)
}

/// Content of `p` with respect to `var`: gcd of its coefficients.
pub fn content_in(p: &MultiPoly, var: usize) -> MultiPoly {
    gcd_list(&p.coefficients_in(var))
}

fn gcd_list(cs: &[MultiPoly]) -> MultiPoly {
    let mut it = cs.iter().filter(|c| !c.is_zero());
    let first = match it.next() {
        None => return MultiPoly::zero(cs.first().map(|c| c.nvars()).unwrap_or(0)),
        Some(f) => f.clone(),
    };
    let mut g = first;
    for c in it {
        if g.is_constant() {
            return MultiPoly::one(g.nvars());
        }
        g = gcd_raw(&g, c);
    }
    g
}

type UPoly = Vec<MultiPoly>;

fn trim(mut a: UPoly) -> UPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn udeg(a: &UPoly) -> usize {
    a.len() - 1
}

/// Pseudo-remainder of `a` by `b` (both nonzero, coefficients in the same universe).
fn prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = udeg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut e = udeg(a) as i64 - db as i64 + 1;
    loop {
        r = trim(r);
        if r.is_empty() || udeg(&r) < db {
            break;
        }
        let dr = udeg(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: UPoly = r.iter().map(|c| c * &lb).collect();
        for (k, bk) in b.iter().enumerate() {
            next[k + shift] = &next[k + shift] - &(bk * &lr);
        }
        next.pop();
        r = next;
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        r = r.iter().map(|c| c * &f).collect();
    }
    trim(r)
}

fn primitive(a: UPoly) -> UPoly {
    let c = gcd_list(&a);
    if c.is_constant() {
        let lc = a.last().unwrap().leading_coeff().unwrap().clone();
        let inv = lc.inv().unwrap();
        return a.iter().map(|x| x.scale(&inv)).collect();
    }
    a.iter().map(|x| x.div_exact(&c).unwrap()).collect()
}

/// Subresultant remainder sequence gcd of two primitive polynomials.
fn subresultant_gcd(a: UPoly, b: UPoly) -> UPoly {
    let n = a[0].nvars();
    let one = || vec![MultiPoly::one(n)];
    let (mut a, mut b) = if udeg(&a) >= udeg(&b) { (a, b) } else { (b, a) };
    if udeg(&b) == 0 {
        return one();
    }
    let mut g = MultiPoly::one(n);
    let mut h = MultiPoly::one(n);
    loop {
        let delta = (udeg(&a) - udeg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            break;
        }
        if udeg(&r) == 0 {
            return one();
        }
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.iter().map(|c| c.div_exact(&divisor).expect("subresultant division is exact")).collect();
        g = a[udeg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            num.div_exact(&den).expect("subresultant h update is exact")
        };
    }
    primitive(b)
}
