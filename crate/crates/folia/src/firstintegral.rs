//! First-integral machinery: extactic (Wronskian) polynomials, Darboux
//! polynomial verification, constant-cofactor search on degree-preserving
//! fields, and recombination of cofactors into monomial rational first
//! integrals.

use crate::error::{FoliaError, Result};
use crate::foliation::{Derivation, FoliationSpec};
use crate::linalg::Matrix;
use crate::poly::{dim_f, monomials_up_to, Monomial, MonomialOrder, Polynomial};
use crate::scalar::Scalar;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

const EXTACTIC_BASIS_LIMIT: usize = 10;
const COFACTOR_BASIS_LIMIT: usize = 60;

/// A polynomial together with its cofactor: d(f) = k·f.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxPair {
    pub f: Polynomial,
    pub cofactor: Polynomial,
}

impl DarbouxPair {
    /// Re-multiplication check of the defining identity.
    pub fn verify(&self, d: &Derivation) -> bool {
        match (d.apply(&self.f), self.cofactor.try_mul(&self.f)) {
            (Ok(df), Ok(kf)) => df == kf,
            _ => false,
        }
    }
}

/// A rational function num/den invariant under the foliation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFirstIntegral {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
}

impl RationalFirstIntegral {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(FoliaError::ZeroInput {
                what: "first-integral denominator".into(),
            });
        }
        Ok(Self {
            numerator,
            denominator,
        }
        .normalized())
    }

    /// Strip a common monomial factor (content/primitive-part reduction) for
    /// plain rational coefficients in at most two variables.
    fn normalized(mut self) -> Self {
        let ctx = self.numerator.context();
        if ctx.nparams() != 0 || ctx.nvars() > 2 || self.numerator.is_zero() {
            return self;
        }
        let mono_gcd = |p: &Polynomial| -> Vec<u32> {
            let mut acc: Option<Vec<u32>> = None;
            for (m, _) in p.terms() {
                acc = Some(match acc {
                    None => m.exps().to_vec(),
                    Some(a) => a.iter().zip(m.exps()).map(|(x, y)| *x.min(y)).collect(),
                });
            }
            acc.unwrap_or_else(|| vec![0; p.context().nvars()])
        };
        let gn = mono_gcd(&self.numerator);
        let gd = mono_gcd(&self.denominator);
        let common: Vec<u32> = gn.iter().zip(&gd).map(|(a, b)| *a.min(b)).collect();
        if common.iter().any(|&e| e > 0) {
            let shift = |p: &Polynomial| {
                Polynomial::from_terms(
                    p.context(),
                    p.terms().map(|(m, c)| {
                        (
                            Monomial::new(
                                m.exps().iter().zip(&common).map(|(e, g)| e - g).collect(),
                            ),
                            c.clone(),
                        )
                    }),
                )
            };
            self.numerator = shift(&self.numerator);
            self.denominator = shift(&self.denominator);
        }
        self
    }

    pub fn render(&self) -> String {
        format!("({}) / ({})", self.numerator.render(), self.denominator.render())
    }
}

/// Exact quotient of `p` by `divisor`, or `None` when not divisible.
fn poly_exact_div(p: &Polynomial, divisor: &Polynomial) -> Option<Polynomial> {
    if divisor.is_zero() {
        return None;
    }
    let ctx = p.context();
    let order = MonomialOrder::Grevlex;
    let (dlm, dlc) = divisor.leading_term(order).map(|(m, c)| (m.clone(), c.clone()))?;
    let mut rem = p.clone();
    let mut quot = Polynomial::zero(ctx);
    while !rem.is_zero() {
        let (rlm, rlc) = {
            let (m, c) = rem.leading_term(order).unwrap();
            (m.clone(), c.clone())
        };
        let q = rlm.try_div(&dlm)?;
        let qc = rlc.div(&dlc).ok()?;
        rem = rem.try_sub(&divisor.mul_term(&q, &qc)).unwrap();
        quot.add_term(q, qc);
    }
    Some(quot)
}

/// Fraction-free determinant of a square polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<Polynomial>>, ctx: &std::sync::Arc<crate::VariableContext>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ctx);
    }
    let mut sign = false;
    let mut prev = Polynomial::one(ctx);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Polynomial::zero(ctx);
            };
            m.swap(k, swap);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].try_mul(&m[k][k]).unwrap();
                let b = m[i][k].try_mul(&m[k][j]).unwrap();
                let num = a.try_sub(&b).unwrap();
                m[i][j] = poly_exact_div(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        det.neg()
    } else {
        det
    }
}

/// Extactic polynomial of a single derivation at degree `n`: the determinant
/// of the matrix whose rows are d^(i-1) applied to the monomial basis of F_n.
pub fn extactic_polynomial(d: &Derivation, n: u32) -> Result<Polynomial> {
    let ctx = d.context();
    let basis = monomials_up_to(ctx.nvars(), n);
    let m = basis.len();
    if m > EXTACTIC_BASIS_LIMIT {
        return Err(FoliaError::UnsupportedSize {
            what: format!("extactic basis for degree {n}"),
            got: m,
            limit: EXTACTIC_BASIS_LIMIT,
        });
    }
    let mut rows: Vec<Vec<Polynomial>> = Vec::with_capacity(m);
    let mut current: Vec<Polynomial> = basis
        .iter()
        .map(|mono| Polynomial::from_terms(ctx, [(mono.clone(), Scalar::one())]))
        .collect();
    for _ in 0..m {
        rows.push(current.clone());
        current = current
            .iter()
            .map(|p| d.apply(p))
            .collect::<Result<_>>()?;
    }
    Ok(bareiss_det(rows, ctx))
}

/// Exact cofactor of `f` under `d`, when d(f) is a polynomial multiple of f.
pub fn darboux_cofactor_check(f: &Polynomial, d: &Derivation) -> Result<Option<Polynomial>> {
    if f.is_zero() {
        return Err(FoliaError::ZeroInput {
            what: "Darboux polynomial".into(),
        });
    }
    let df = d.apply(f)?;
    if df.is_zero() {
        return Ok(Some(Polynomial::zero(f.context())));
    }
    Ok(poly_exact_div(&df, f))
}

/// Result of the constant-cofactor search.
#[derive(Debug, Clone)]
pub struct CofactorSearch {
    pub pairs: Vec<DarbouxPair>,
    /// False when the field does not map F_deg into itself; the search is
    /// then skipped and `pairs` is empty.
    pub degree_preserving: bool,
    /// True when the characteristic polynomial has non-rational roots or the
    /// operator matrix has non-rational entries.
    pub nonrational_spectrum: bool,
}

fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        det *= &m[k][k];
        let inv = m[k][k].recip();
        for r in k + 1..n {
            if m[r][k].is_zero() {
                continue;
            }
            let factor = &m[r][k] * &inv;
            for c in k..n {
                let sub = &m[k][c] * &factor;
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Coefficients of det(λI − T), low degree first, by exact interpolation.
fn charpoly(t: &[Vec<BigRational>]) -> Vec<BigRational> {
    let n = t.len();
    let samples: Vec<(BigRational, BigRational)> = (0..=n as i64)
        .map(|s| {
            let lambda = BigRational::from_integer(BigInt::from(s));
            let m: Vec<Vec<BigRational>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                &lambda - &t[i][j]
                            } else {
                                -t[i][j].clone()
                            }
                        })
                        .collect()
                })
                .collect();
            (lambda, det_rational(m))
        })
        .collect();
    // Lagrange interpolation with exact rationals.
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            // basis *= (λ - xj)
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k] -= c * xj;
                next[k + 1] += c;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    coeffs
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// All rational roots of the characteristic polynomial, ascending.
///
/// Candidates p/q obey the rational-root theorem (q divides the cleared
/// leading coefficient) and are pruned with the Gershgorin bound on the
/// operator, which keeps the numerator enumeration small. Returns the roots
/// and whether any non-rational spectrum remains.
fn rational_eigenvalues(t: &[Vec<BigRational>]) -> (Vec<BigRational>, bool) {
    let n = t.len();
    if n == 0 {
        return (vec![], false);
    }
    let coeffs = charpoly(t);
    // Gershgorin: every eigenvalue satisfies |λ| ≤ max row sum of |T|.
    let bound = t
        .iter()
        .map(|row| row.iter().map(|e| e.abs()).sum::<BigRational>())
        .max()
        .unwrap_or_else(BigRational::zero);
    let mut roots = Vec::new();
    // Strip the λ^k factor: eigenvalue 0.
    let low = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("characteristic polynomial is monic");
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let reduced = &coeffs[low..];
    let lead_den_lcm = reduced
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let cleared: Vec<BigInt> = reduced
        .iter()
        .map(|c| (c * &lead_den_lcm).to_integer())
        .collect();
    let a0 = cleared.first().cloned().unwrap_or_else(BigInt::zero);
    let alead = cleared.last().cloned().unwrap_or_else(BigInt::one);
    if !a0.is_zero() {
        for q in divisors(&alead) {
            // |p| ≤ bound·q keeps candidates inside the eigenvalue bound.
            let pmax_rat = &bound * BigRational::from_integer(q.clone());
            let pmax = pmax_rat.ceil().to_integer();
            let mut p = BigInt::one();
            while p <= pmax {
                if (&a0 % &p).is_zero() && p.gcd(&q).is_one() {
                    for cand in [
                        BigRational::new(p.clone(), q.clone()),
                        BigRational::new(-p.clone(), q.clone()),
                    ] {
                        if horner(reduced, &cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
                p += 1;
            }
        }
    }
    roots.sort();
    roots.dedup();
    // Total multiplicity of the rational roots against the degree.
    let mut remaining: Vec<BigRational> = coeffs.clone();
    let mut total_mult = 0usize;
    for r in &roots {
        while remaining.len() >= 2 && horner(&remaining, r).is_zero() {
            // synthetic division by (λ - r)
            let mut quot = vec![BigRational::zero(); remaining.len() - 1];
            let mut acc = BigRational::zero();
            for k in (1..remaining.len()).rev() {
                acc = if k == remaining.len() - 1 {
                    remaining[k].clone()
                } else {
                    &remaining[k] + &acc * r
                };
                quot[k - 1] = acc.clone();
            }
            remaining = quot;
            total_mult += 1;
        }
    }
    (roots, total_mult < n)
}

/// Search for Darboux polynomials with constant cofactor at degree ≤ `deg`:
/// eigenvectors of f ↦ d(f) on F_deg for rational eigenvalues, excluding
/// constants. Non-constant kernel elements of the operator itself come back
/// with cofactor 0 (polynomial first integrals).
pub fn constant_cofactor_search(d: &Derivation, deg: u32) -> Result<CofactorSearch> {
    if deg < 1 {
        return Err(FoliaError::InvalidOption {
            message: "cofactor search degree must be at least 1".into(),
        });
    }
    let ctx = d.context();
    let m = dim_f(ctx.nvars(), deg);
    if m > COFACTOR_BASIS_LIMIT {
        return Err(FoliaError::UnsupportedSize {
            what: format!("cofactor search basis for degree {deg}"),
            got: m,
            limit: COFACTOR_BASIS_LIMIT,
        });
    }
    // Columns in descending grevlex order, matching kernel canonicalization.
    let basis: Vec<Monomial> = monomials_up_to(ctx.nvars(), deg)
        .into_iter()
        .rev()
        .collect();
    let images: Vec<Polynomial> = basis
        .iter()
        .map(|mono| d.apply(&Polynomial::from_terms(ctx, [(mono.clone(), Scalar::one())])))
        .collect::<Result<_>>()?;
    if images
        .iter()
        .any(|p| p.total_degree().map(|td| td > deg).unwrap_or(false))
    {
        return Ok(CofactorSearch {
            pairs: vec![],
            degree_preserving: false,
            nonrational_spectrum: false,
        });
    }
    // Operator matrix; bail out to the spectrum flag on parametric entries.
    let mut t: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); m]; m];
    for (j, image) in images.iter().enumerate() {
        for (mono, c) in image.terms() {
            let i = basis.iter().position(|b| b == mono).unwrap();
            match c.as_rational() {
                Some(q) => t[i][j] = q.clone(),
                None => {
                    return Ok(CofactorSearch {
                        pairs: vec![],
                        degree_preserving: true,
                        nonrational_spectrum: true,
                    })
                }
            }
        }
    }
    let (eigenvalues, nonrational) = rational_eigenvalues(&t);
    let mut pairs = Vec::new();
    for lambda in &eigenvalues {
        let shifted: Vec<Vec<Scalar>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let v = if i == j { &t[i][j] - lambda } else { t[i][j].clone() };
                        Scalar::from_rational(v)
                    })
                    .collect()
            })
            .collect();
        let kernel = Matrix::from_rows(shifted, m).nullspace()?;
        for vec in kernel {
            let f = Polynomial::from_terms(
                ctx,
                basis
                    .iter()
                    .cloned()
                    .zip(vec.into_iter())
                    .filter(|(_, c)| !c.is_zero()),
            );
            if f.is_constant() {
                continue;
            }
            let pair = DarbouxPair {
                cofactor: Polynomial::constant(ctx, Scalar::from_rational(lambda.clone())),
                f,
            };
            debug_assert!(pair.verify(d));
            pairs.push(pair);
        }
    }
    Ok(CofactorSearch {
        pairs,
        degree_preserving: true,
        nonrational_spectrum: nonrational,
    })
}

/// Combine Darboux pairs into a monomial rational first integral: a non-zero
/// integer vector (m₁, …, m_s) with Σ mᵢkᵢ = 0 yields Π fᵢ^{mᵢ}.
///
/// The kernel vector is canonical: first vector of the canonical kernel
/// basis, scaled to coprime integers, sign fixed so the first non-zero entry
/// is positive.
pub fn combine_cofactors(pairs: &[DarbouxPair]) -> Result<Option<RationalFirstIntegral>> {
    if pairs.is_empty() {
        return Err(FoliaError::EmptyInput {
            what: "cofactor list".into(),
        });
    }
    let ctx = pairs[0].f.context();
    for p in pairs {
        crate::context::ensure_same_context(ctx, p.f.context())?;
    }
    // Rows indexed by the monomials appearing in any cofactor.
    let mut monos: Vec<Monomial> = Vec::new();
    for p in pairs {
        for (m, _) in p.cofactor.terms() {
            if !monos.contains(m) {
                monos.push(m.clone());
            }
        }
    }
    monos.sort();
    if monos.is_empty() {
        // All cofactors are zero: every single factor is already invariant.
        let fi = RationalFirstIntegral::new(pairs[0].f.clone(), Polynomial::one(ctx))?;
        return Ok(Some(fi));
    }
    let rows: Vec<Vec<Scalar>> = monos
        .iter()
        .map(|m| pairs.iter().map(|p| p.cofactor.coeff(m)).collect())
        .collect();
    let kernel = Matrix::from_rows(rows, pairs.len()).nullspace()?;
    let Some(first) = kernel.first() else {
        return Ok(None);
    };
    // Scale to coprime integers with a positive leading entry.
    let mut rationals = Vec::with_capacity(first.len());
    for s in first {
        match s.as_rational() {
            Some(q) => rationals.push(q.clone()),
            None => return Ok(None),
        }
    }
    let den_lcm = rationals
        .iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = rationals
        .iter()
        .map(|q| (q * &den_lcm).to_integer())
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in ints.iter_mut() {
            *v /= &content;
        }
    }
    if let Some(firstnz) = ints.iter().find(|v| !v.is_zero()) {
        if firstnz.is_negative() {
            for v in ints.iter_mut() {
                *v = -v.clone();
            }
        }
    }
    let mut num = Polynomial::one(ctx);
    let mut den = Polynomial::one(ctx);
    for (p, e) in pairs.iter().zip(&ints) {
        let exp = i64::try_from(e.clone()).map_err(|_| FoliaError::InvalidOption {
            message: "first-integral exponent overflow".into(),
        })?;
        if exp > 0 {
            num = num.try_mul(&p.f.pow(exp as u32))?;
        } else if exp < 0 {
            den = den.try_mul(&p.f.pow((-exp) as u32))?;
        }
    }
    Ok(Some(RationalFirstIntegral::new(num, den)?))
}

/// Exact invariance test: ∂(num)·den − num·∂(den) = 0 for every generator.
pub fn verify_first_integral(fi: &RationalFirstIntegral, spec: &FoliationSpec) -> Result<bool> {
    for d in spec.generators() {
        let left = d.apply(&fi.numerator)?.try_mul(&fi.denominator)?;
        let right = fi.numerator.try_mul(&d.apply(&fi.denominator)?)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One generator's search outcome inside the multi-generator pipeline.
#[derive(Debug, Clone)]
pub struct FirstIntegralOutcome {
    pub generator: String,
    pub search: CofactorSearch,
    pub integral: Option<RationalFirstIntegral>,
    pub verified: bool,
}

/// Run the per-generator constant-cofactor pipeline and keep candidates that
/// verify against the whole foliation.
pub fn find_first_integrals(spec: &FoliationSpec, deg: u32) -> Result<Vec<FirstIntegralOutcome>> {
    let mut out = Vec::new();
    for (name, d) in spec.names().iter().zip(spec.generators()) {
        let search = constant_cofactor_search(d, deg)?;
        let candidate = if search.pairs.is_empty() {
            None
        } else {
            combine_cofactors(&search.pairs)?
        };
        let verified = match &candidate {
            Some(fi) => verify_first_integral(fi, spec)?,
            None => false,
        };
        out.push(FirstIntegralOutcome {
            generator: name.clone(),
            search,
            integral: candidate,
            verified,
        });
    }
    Ok(out)
}
