//! Solutions built directly from disjoint pairs of designs, the recursive
//! LAT doubling in the plane, and the digit-sum partition of an interval.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::{check_bound, BoundCertificate, DomainSpec};
use crate::designs::{
    designs_disjoint, fano_pair, gdd_z8_pair, oas_disjoint, paley, parity_split, verify_gdd,
    witt_system, GroupDivisibleDesign, OrthogonalArray,
};
use crate::error::{Error, Result};
use crate::pte::{PteClass, PteInstance, PtePoint};
use crate::rational::Rational;

/// Largest θ tried by the automatic choice in [`lat_construction`].
pub const LAT_THETA_LIMIT: i64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Re-run verification on the output (on by default).
    pub reverify: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { reverify: true }
    }
}

fn finish(instance: PteInstance, opts: Options) -> Result<PteInstance> {
    if opts.reverify {
        let report = instance.verify();
        if !report.holds {
            return Err(Error::VerificationFailed(format!(
                "constructed instance fails at degree {}: {:?}",
                instance.degree(),
                report.first_failure
            )));
        }
    }
    Ok(instance)
}

pub fn oa_to_pte(a: &OrthogonalArray, b: &OrthogonalArray) -> Result<PteInstance> {
    oa_to_pte_with(a, b, Options::default())
}

/// Two row-disjoint OA(ℓ, r, s, t)_λ with s, t ≥ 2 give a proper solution
/// of degree t and size ℓ.
pub fn oa_to_pte_with(a: &OrthogonalArray, b: &OrthogonalArray, opts: Options) -> Result<PteInstance> {
    let params = |x: &OrthogonalArray| (x.row_count(), x.columns(), x.levels(), x.strength(), x.index());
    if params(a) != params(b) {
        return Err(Error::InvalidParameter(format!(
            "arrays have different parameters (l, r, s, t, lambda): {:?} and {:?}",
            params(a),
            params(b)
        )));
    }
    if a.levels() < 2 || a.strength() < 2 {
        return Err(Error::InvalidParameter(format!(
            "need s >= 2 and t >= 2, got s = {}, t = {}",
            a.levels(),
            a.strength()
        )));
    }
    if !oas_disjoint(a, b) {
        return Err(Error::NotDisjoint("the arrays share a row".into()));
    }
    let instance = PteInstance::new(
        a.columns(),
        a.strength() as u32,
        vec![PteClass::new(a.rows().to_vec())?, PteClass::new(b.rows().to_vec())?],
    )?;
    finish(instance, opts)
}

fn design_params(d: &GroupDivisibleDesign) -> (usize, usize, usize, usize, usize, usize) {
    (
        d.point_count(),
        d.group_count(),
        d.group_size(),
        d.block_size(),
        d.strength(),
        d.index(),
    )
}

fn check_design_pair(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign) -> Result<()> {
    if design_params(a) != design_params(b) || a.block_count() != b.block_count() {
        return Err(Error::InvalidParameter(format!(
            "designs have different parameters (r, g, v, k, t, lambda): {:?} and {:?}",
            design_params(a),
            design_params(b)
        )));
    }
    for d in [a, b] {
        let check = verify_gdd(d);
        if !check.is_valid() {
            return Err(Error::VerificationFailed(format!("not a valid design: {check:?}")));
        }
    }
    if !designs_disjoint(a, b) {
        return Err(Error::NotDisjoint("the designs share a block".into()));
    }
    Ok(())
}

fn char_vector_instance(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign, opts: Options) -> Result<PteInstance> {
    let instance = PteInstance::new(
        a.point_count(),
        a.strength() as u32,
        vec![PteClass::new(a.char_vectors())?, PteClass::new(b.char_vectors())?],
    )?;
    finish(instance, opts)
}

pub fn gdd_to_pte(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign) -> Result<PteInstance> {
    gdd_to_pte_with(a, b, Options::default())
}

/// Two disjoint GDD_λ(t, k, r) of type v^g with k < g: the characteristic
/// vectors form a proper solution of degree t and size b.
pub fn gdd_to_pte_with(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign, opts: Options) -> Result<PteInstance> {
    check_design_pair(a, b)?;
    if a.block_size() >= a.group_count() {
        return Err(Error::Precondition(format!(
            "need k < g, got k = {}, g = {}",
            a.block_size(),
            a.group_count()
        )));
    }
    char_vector_instance(a, b, opts)
}

pub fn tdesign_to_pte(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign) -> Result<PteInstance> {
    tdesign_to_pte_with(a, b, Options::default())
}

/// Two disjoint t-(r, k, λ) designs with r > k.
pub fn tdesign_to_pte_with(a: &GroupDivisibleDesign, b: &GroupDivisibleDesign, opts: Options) -> Result<PteInstance> {
    if a.group_size() != 1 || b.group_size() != 1 {
        return Err(Error::InvalidParameter("t-designs have singleton groups".into()));
    }
    check_design_pair(a, b)?;
    if a.point_count() <= a.block_size() {
        return Err(Error::Precondition(format!(
            "need r > k, got r = {}, k = {}",
            a.point_count(),
            a.block_size()
        )));
    }
    char_vector_instance(a, b, opts)
}

/// Generating pairs (φ_i, ψ_i) and the scalars θ_2..θ_k actually used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatGenerator {
    pub pairs: Vec<(Rational, Rational)>,
    pub thetas: Vec<Rational>,
}

/// Default generating pairs: (1,0), (0,1), (1,1), (1,2), (1,3), ...
pub fn default_lat_pairs(count: usize) -> Vec<(Rational, Rational)> {
    (0..count)
        .map(|i| match i {
            0 => (Rational::one(), Rational::zero()),
            1 => (Rational::zero(), Rational::one()),
            _ => (Rational::one(), Rational::from(i as i64 - 1)),
        })
        .collect()
}

fn shift(points: &[PtePoint], by: &[Rational; 2]) -> Vec<PtePoint> {
    points
        .iter()
        .map(|p| vec![&p[0] + &by[0], &p[1] + &by[1]])
        .collect()
}

fn meets(a: &[PtePoint], b: &[PtePoint]) -> bool {
    let set: BTreeSet<&PtePoint> = a.iter().collect();
    b.iter().any(|p| set.contains(p))
}

/// One doubling step is admissible when the two conditions of the
/// construction hold (V ∩ (w+U) = U ∩ (w+V) = ∅) and the new classes are
/// disjoint, which additionally needs U ∩ (w+U) = V ∩ (w+V) = ∅.
fn lat_step_ok(u: &[PtePoint], v: &[PtePoint], w: &[Rational; 2]) -> bool {
    let (wu, wv) = (shift(u, w), shift(v, w));
    !meets(v, &wu) && !meets(u, &wv) && !meets(u, &wu) && !meets(v, &wv)
}

/// The recursive doubling U_{i+1} = V_i ∪ (θ w_{i+1} + U_i),
/// V_{i+1} = U_i ∪ (θ w_{i+1} + V_i) starting from U_1 = {0, w_1 + w_2},
/// V_1 = {w_1, w_2}. Needs max(k, 2) pairs. Missing θ values are chosen as
/// the smallest admissible positive integers.
pub fn lat_construction(
    pairs: &[(Rational, Rational)],
    k: usize,
    thetas: Option<&[Rational]>,
) -> Result<(PteInstance, LatGenerator)> {
    if k == 0 {
        return Err(Error::InvalidParameter("degree k must be at least 1".into()));
    }
    let needed = k.max(2);
    if pairs.len() < needed {
        return Err(Error::InvalidParameter(format!(
            "degree {k} needs {needed} generating pairs, got {}",
            pairs.len()
        )));
    }
    if let Some(th) = thetas {
        if th.len() != k - 1 {
            return Err(Error::InvalidParameter(format!(
                "degree {k} needs {} theta values, got {}",
                k - 1,
                th.len()
            )));
        }
    }
    let w = |i: usize| [pairs[i].0.clone(), pairs[i].1.clone()];
    let (w1, w2) = (w(0), w(1));
    let mut u: Vec<PtePoint> = vec![
        vec![Rational::zero(), Rational::zero()],
        vec![&w1[0] + &w2[0], &w1[1] + &w2[1]],
    ];
    let mut v: Vec<PtePoint> = vec![w1.to_vec(), w2.to_vec()];
    if w1 == w2 || meets(&u, &v) {
        return Err(Error::Degenerate(
            "the first two generating pairs must be distinct and keep U_1, V_1 disjoint".into(),
        ));
    }
    let mut used = Vec::new();
    for i in 1..k {
        let wi = w(i);
        let theta = match thetas {
            Some(th) => {
                let theta = th[i - 1].clone();
                let scaled = [&theta * &wi[0], &theta * &wi[1]];
                if !lat_step_ok(&u, &v, &scaled) {
                    return Err(Error::NotDisjoint(format!(
                        "theta_{} = {theta} violates the disjointness conditions",
                        i + 1
                    )));
                }
                theta
            }
            None => (1..=LAT_THETA_LIMIT)
                .map(Rational::from)
                .find(|theta| lat_step_ok(&u, &v, &[theta * &wi[0], theta * &wi[1]]))
                .ok_or_else(|| {
                    Error::Degenerate(format!(
                        "no theta_{} up to {LAT_THETA_LIMIT} keeps the classes disjoint",
                        i + 1
                    ))
                })?,
        };
        let scaled = [&theta * &wi[0], &theta * &wi[1]];
        let next_u: Vec<PtePoint> = v.iter().cloned().chain(shift(&u, &scaled)).collect();
        let next_v: Vec<PtePoint> = u.iter().cloned().chain(shift(&v, &scaled)).collect();
        u = next_u;
        v = next_v;
        used.push(theta);
    }
    let instance = PteInstance::new(2, k as u32, vec![PteClass::new(u)?, PteClass::new(v)?])?;
    let instance = finish(instance, Options::default())?;
    Ok((
        instance,
        LatGenerator {
            pairs: pairs[..needed].to_vec(),
            thetas: used,
        },
    ))
}

/// Degree-2 solution of size p from the Paley designs, with its tightness
/// certificate on the binary sphere S_{(p-1)/2}^{p-1}.
pub fn paley_tight(p: usize) -> Result<(PteInstance, BoundCertificate)> {
    let out = paley(p)?;
    let instance = tdesign_to_pte(&out.residues, &out.non_residues)?;
    let cert = check_bound(&instance, &DomainSpec::sphere(p, (p - 1) / 2)?, 1)?;
    Ok((instance, cert))
}

/// The two halves of {0,1}^3 by parity: degree 2, size 4.
pub fn halving() -> Result<PteInstance> {
    parity(3)
}

/// Even- and odd-weight halves of {0,1}^r: degree r-1, size 2^{r-1}.
pub fn parity(r: usize) -> Result<PteInstance> {
    if r < 3 {
        return Err(Error::InvalidParameter(format!(
            "parity solutions need r >= 3 (strength r-1 >= 2), got {r}"
        )));
    }
    let (even, odd) = parity_split(r)?;
    oa_to_pte(&even, &odd)
}

pub fn fano() -> Result<PteInstance> {
    let (a, b) = fano_pair();
    tdesign_to_pte(&a, &b)
}

pub fn witt() -> Result<PteInstance> {
    let (a, b) = witt_system();
    tdesign_to_pte(&a, &b)
}

pub fn gdd_z8() -> Result<PteInstance> {
    let (a, b) = gdd_z8_pair();
    gdd_to_pte(&a, &b)
}

/// Two 6-point sets in {0..5}^2 agreeing up to degree 4.
pub fn nonbinary() -> Result<PteInstance> {
    let a: &[&[i64]] = &[&[4, 0], &[1, 1], &[3, 2], &[5, 2], &[0, 3], &[2, 4]];
    let b: &[&[i64]] = &[&[3, 0], &[5, 1], &[0, 2], &[2, 2], &[4, 3], &[1, 4]];
    let instance = PteInstance::new(
        2,
        4,
        vec![PteClass::from_integer_points(a)?, PteClass::from_integer_points(b)?],
    )?;
    finish(instance, Options::default())
}

/// Named instances built by this crate, smallest first.
pub fn catalog() -> Result<Vec<(&'static str, PteInstance)>> {
    let pairs = default_lat_pairs(3);
    let base = crate::lifting::SignedBase::from_integers(&[18, -20, 2], &[10, 12, -22])?;
    let (two, seven) = (Rational::from(2), Rational::from(7));
    Ok(vec![
        ("halving", halving()?),
        ("parity5", parity(5)?),
        ("fano", fano()?),
        ("gddz8", gdd_z8()?),
        ("paley11", paley_tight(11)?.0),
        ("nonbinary", nonbinary()?),
        ("lat3", lat_construction(&pairs, 3, None)?.0),
        ("prouhet2-3", prouhet_partition(2, 3)?),
        ("borwein1d", crate::lifting::borwein1d(&two, &seven)?),
        ("borwein2d", crate::lifting::borwein2d(&two, &seven)?),
        (
            "borwein3d",
            crate::lifting::borwein3d(
                &[Rational::from(18), Rational::from(-20), Rational::from(2)],
                &[Rational::from(10), Rational::from(12), Rational::from(-22)],
            )?,
        ),
        ("oalift", crate::lifting::oa_lift(&crate::designs::trivial_oa(3, 2)?, &base, 2)?),
        ("witt", witt()?),
    ])
}

/// The integers 0..α^{m+1} split into α classes by base-α digit sum mod α.
pub fn prouhet_partition(alpha: usize, m: u32) -> Result<PteInstance> {
    if alpha < 2 || m == 0 {
        return Err(Error::InvalidParameter(format!(
            "need alpha >= 2 and m >= 1, got alpha = {alpha}, m = {m}"
        )));
    }
    let total = (alpha as u64)
        .checked_pow(m + 1)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::InvalidParameter("partition too large".into()))?;
    let mut classes: Vec<Vec<PtePoint>> = vec![Vec::new(); alpha];
    for x in 0..total {
        let (mut y, mut digits) = (x, 0u64);
        while y > 0 {
            digits += y % alpha as u64;
            y /= alpha as u64;
        }
        classes[(digits % alpha as u64) as usize].push(vec![Rational::from(x)]);
    }
    let classes = classes
        .into_iter()
        .map(PteClass::new)
        .collect::<Result<Vec<_>>>()?;
    finish(PteInstance::new(1, m, classes)?, Options::default())
}
