//! Symmetry of operated premaniplexes: orbit accounting, the coset graphs
//! `Z_{y1}`, certificates against extra symmetry, and lifts of
//! automorphisms of `Y`.
//!
//! Throughout, `P = X ⋊ Y` with flag `(x, y)` at `x·|Y| + y`, and `Aut(X)`
//! sits inside `Aut(P)` as `(x, y) ↦ (xγ, y)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cosetenum::realize_schreier;
use crate::coxword::CoxWord;
use crate::error::{Error, Result};
use crate::operators::d_operator;
use crate::premaniplex::Premaniplex;
use crate::symmetry::{
    automorphisms, covers, extend_morphism, is_isomorphic, AutomorphismGroup, FlagPermutation,
};
use crate::voltage::{preserves_connectivity, product, zeta, Connectivity, VoltageOperator};

/// Products above this many flags are not compared directly in
/// [`certify`] unless the caller raises the limit.
pub const DEFAULT_DIRECT_LIMIT: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitAccount {
    /// Flag orbits of `X`.
    pub k: usize,
    pub y_size: usize,
    pub x_aut_order: usize,
    pub product_aut_order: usize,
    /// Automorphisms of `P` keeping the base flag's `Y`-coordinate; this is
    /// the embedded copy of `Aut(X)`.
    pub lifted_aut_order: usize,
    /// `[Aut(P) : Aut(X)]`.
    pub index: usize,
    /// Order of the group of all lifts of automorphisms of `Y`.
    pub lift_group_order: usize,
    /// `[Aut(P) : lifts]`.
    pub t: usize,
    pub product_orbits: usize,
}

impl fmt::Display for OrbitAccount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k: {}", self.k)?;
        writeln!(f, "y_size: {}", self.y_size)?;
        writeln!(f, "x_aut_order: {}", self.x_aut_order)?;
        writeln!(f, "product_aut_order: {}", self.product_aut_order)?;
        writeln!(f, "lifted_aut_order: {}", self.lifted_aut_order)?;
        writeln!(f, "index: {}", self.index)?;
        writeln!(f, "lift_group_order: {}", self.lift_group_order)?;
        writeln!(f, "t: {}", self.t)?;
        write!(f, "product_orbits: {}", self.product_orbits)
    }
}

fn require_connected(p: &Premaniplex) -> Result<()> {
    let components = p.components().len();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    Ok(())
}

/// `(x, y) ↦ (xγ, y)`.
fn embed(gamma: &FlagPermutation, y_size: usize) -> FlagPermutation {
    let images = (0..gamma.len() * y_size)
        .map(|f| gamma.image(f / y_size) * y_size + f % y_size)
        .collect();
    FlagPermutation::new(images).expect("embedding of a bijection")
}

/// The permutation of `Y` induced by `alpha`, if its `Y`-coordinate
/// depends only on `y`.
fn projection(alpha: &FlagPermutation, y_size: usize) -> Option<FlagPermutation> {
    let mut tau = vec![usize::MAX; y_size];
    for f in 0..alpha.len() {
        let y = f % y_size;
        let img = alpha.image(f) % y_size;
        if tau[y] == usize::MAX {
            tau[y] = img;
        } else if tau[y] != img {
            return None;
        }
    }
    FlagPermutation::new(tau).ok()
}

pub fn orbit_accounting(x: &Premaniplex, op: &VoltageOperator) -> Result<OrbitAccount> {
    require_connected(x)?;
    let p = product(x, op)?;
    require_connected(&p)?;
    let ky = op.flag_count();
    let aut_x = automorphisms(x)?;
    let aut_p = automorphisms(&p)?;
    let fixing: Vec<&FlagPermutation> = aut_p
        .elements
        .iter()
        .filter(|a| a.image(0) % ky == 0)
        .collect();
    let embedded: Vec<FlagPermutation> = aut_x.elements.iter().map(|g| embed(g, ky)).collect();
    if fixing.len() != embedded.len() || embedded.iter().any(|e| !fixing.contains(&e)) {
        return Err(Error::Hypothesis(
            "automorphisms fixing the base Y-coordinate differ from the embedded Aut(X)".into(),
        ));
    }
    let lift_group_order = aut_p
        .elements
        .iter()
        .filter(|a| projection(a, ky).is_some())
        .count();
    let account = OrbitAccount {
        k: aut_x.orbit_count(),
        y_size: ky,
        x_aut_order: aut_x.order(),
        product_aut_order: aut_p.order(),
        lifted_aut_order: fixing.len(),
        index: aut_p.order() / aut_x.order(),
        lift_group_order,
        t: aut_p.order() / lift_group_order,
        product_orbits: aut_p.orbit_count(),
    };
    if account.product_orbits * account.index != account.k * ky
        || account.index * aut_x.order() != aut_p.order()
    {
        return Err(Error::Hypothesis(format!(
            "orbit count identity fails: {} orbits, index {}, k = {}, |Y| = {}",
            account.product_orbits, account.index, account.k, ky
        )));
    }
    Ok(account)
}

/// The simultaneous stabilizer of flags 0 and `y1` of `Y`, as Schreier
/// generators of the component of `(0, y1)` in the diagonal square.
pub fn joint_stabilizer(y: &Premaniplex, y1: usize) -> Result<Vec<CoxWord>> {
    if y1 >= y.flag_count() {
        return Err(Error::FlagOutOfRange {
            flag: y1,
            flag_count: y.flag_count(),
        });
    }
    let k = y.flag_count();
    let perms = (0..y.rank())
        .map(|i| {
            (0..k * k)
                .map(|f| y.adj(f / k, i) * k + y.adj(f % k, i))
                .collect()
        })
        .collect();
    let square = Premaniplex::new(perms)?;
    let (component, original) = square.component_of(y1)?;
    let base = original
        .iter()
        .position(|&f| f == y1)
        .expect("flag in its own component");
    Ok(component.schreier_generators(base)?.generators)
}

/// `Z_{y1} = C^n / ζ(Stab(y0) ∩ Stab(y1))`; fails with `Capped` past the cap.
pub fn z_upsilon(op: &VoltageOperator, y1: usize, cap: usize) -> Result<Premaniplex> {
    require_connected(op.premaniplex())?;
    let images = joint_stabilizer(op.premaniplex(), y1)?
        .iter()
        .map(|w| zeta(op, w))
        .collect::<Result<Vec<_>>>()?;
    realize_schreier(op.source_rank(), &images, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    NoExtra,
    NoExtraBeyondLifts,
    ExtraPresent,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::NoExtra => "no-extra",
            Verdict::NoExtraBeyondLifts => "no-extra-beyond-lifts",
            Verdict::ExtraPresent => "extra-present",
            Verdict::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagRecord {
    pub y1: usize,
    /// Least flag in the `Aut(Y)`-orbit of `y1`.
    pub orbit_rep: usize,
    /// Whether `y1` lies in the `Aut(Y)`-orbit of the base flag.
    pub in_base_orbit: bool,
    /// Flag count of `Z_{y1}` when it was built.
    pub z_flags: Option<usize>,
    pub x_covers_z: Option<bool>,
    pub capped: bool,
}

impl fmt::Display for FlagRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        let cov = match self.x_covers_z {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        write!(
            f,
            "y1={} orbit_rep={} in_base_orbit={} z_flags={} covers={} capped={}",
            self.y1,
            self.orbit_rep,
            self.in_base_orbit,
            opt(self.z_flags),
            cov,
            self.capped
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftRecord {
    pub tau: Vec<usize>,
    pub lifts: bool,
    pub preserves_voltages: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraSymmetryCertificate {
    pub verdict: Verdict,
    pub records: Vec<FlagRecord>,
    pub x_aut_order: usize,
    pub lifts: Vec<LiftRecord>,
    /// `|Aut(X)| · |{τ that lift}|`.
    pub lifted_order: usize,
    /// `|Aut(P)|` when the direct comparison was run.
    pub product_aut_order: Option<usize>,
}

impl fmt::Display for ExtraSymmetryCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "x_aut_order: {}", self.x_aut_order)?;
        writeln!(f, "lifted_order: {}", self.lifted_order)?;
        match self.product_aut_order {
            Some(o) => writeln!(f, "product_aut_order: {o}")?,
            None => writeln!(f, "product_aut_order: -")?,
        }
        for r in &self.records {
            writeln!(f, "record: {r}")?;
        }
        for (k, l) in self.lifts.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "lift: tau={:?} lifts={} preserves_voltages={}",
                l.tau, l.lifts, l.preserves_voltages
            )?;
        }
        Ok(())
    }
}

fn preserves_voltages(op: &VoltageOperator, tau: &FlagPermutation) -> bool {
    (0..op.rank())
        .all(|i| (0..op.flag_count()).all(|y| op.voltage(tau.image(y), i) == op.voltage(y, i)))
}

/// Automorphisms of `Y` that preserve every dart voltage.
pub fn aut_preserving(op: &VoltageOperator) -> Result<Vec<FlagPermutation>> {
    Ok(automorphisms(op.premaniplex())?
        .elements
        .into_iter()
        .filter(|tau| preserves_voltages(op, tau))
        .collect())
}

fn find_lift_in(
    p: &Premaniplex,
    x_flags: usize,
    ky: usize,
    tau: &FlagPermutation,
) -> Option<FlagPermutation> {
    let target_y = tau.image(0);
    (0..x_flags).find_map(|xp| match extend_morphism(p, p, 0, xp * ky + target_y) {
        Ok(Ok(map)) => FlagPermutation::new(map).ok(),
        _ => None,
    })
}

/// An automorphism of `X ⋊ Y` projecting to `τ`, searched by the image of
/// the base flag among `(x', y0τ)`.
pub fn find_lift(
    x: &Premaniplex,
    op: &VoltageOperator,
    tau: &FlagPermutation,
) -> Result<Option<FlagPermutation>> {
    require_connected(x)?;
    if !tau.is_automorphism_of(op.premaniplex()) {
        return Err(Error::NotAutomorphism(
            "τ is not an automorphism of Y".into(),
        ));
    }
    let p = product(x, op)?;
    require_connected(&p)?;
    Ok(find_lift_in(&p, x.flag_count(), op.flag_count(), tau))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftedGroup {
    pub group: AutomorphismGroup,
    pub x_aut_order: usize,
    /// The automorphisms of `Y` that lift.
    pub liftable: Vec<FlagPermutation>,
    /// `|Γ̃| = |Aut(X)| · |Γ|`.
    pub extension_law: bool,
    pub product_aut_order: usize,
    pub is_full: bool,
}

fn require_preserving(op: &VoltageOperator, cap: usize) -> Result<()> {
    match preserves_connectivity(op, cap) {
        Connectivity::Yes => Ok(()),
        other => Err(Error::Hypothesis(format!(
            "operator must preserve connectivity (got {other})"
        ))),
    }
}

/// The group generated by the embedded `Aut(X)` and one lift of each
/// liftable automorphism of `Y`.
pub fn lifted_group(x: &Premaniplex, op: &VoltageOperator, cap: usize) -> Result<LiftedGroup> {
    require_connected(x)?;
    require_preserving(op, cap)?;
    let p = product(x, op)?;
    let ky = op.flag_count();
    let aut_x = automorphisms(x)?;
    let mut generators: Vec<FlagPermutation> =
        aut_x.elements.iter().map(|g| embed(g, ky)).collect();
    let mut liftable = Vec::new();
    for tau in automorphisms(op.premaniplex())?.elements {
        if let Some(lift) = find_lift_in(&p, x.flag_count(), ky, &tau) {
            generators.push(lift);
            liftable.push(tau);
        }
    }
    let group = AutomorphismGroup::generated_by(&generators, p.flag_count());
    let product_aut_order = automorphisms(&p)?.order();
    Ok(LiftedGroup {
        extension_law: group.order() == aut_x.order() * liftable.len(),
        is_full: group.order() == product_aut_order,
        x_aut_order: aut_x.order(),
        product_aut_order,
        liftable,
        group,
    })
}

/// Checks that `images` realize `τ` on voltages, then compares
/// `X^{τ#} ⋊ Y` with `X ⋊ Y`.
pub fn same_result_check(
    x: &Premaniplex,
    op: &VoltageOperator,
    tau: &FlagPermutation,
    images: &[CoxWord],
) -> Result<bool> {
    if !tau.is_automorphism_of(op.premaniplex()) {
        return Err(Error::NotAutomorphism(
            "τ is not an automorphism of Y".into(),
        ));
    }
    for i in 0..op.rank() {
        for y in 0..op.flag_count() {
            if op.voltage(y, i).substitute(images)? != *op.voltage(tau.image(y), i) {
                return Err(Error::Hypothesis(format!(
                    "images do not carry the voltage of dart ({y}, {i}) to that of ({}, {i})",
                    tau.image(y)
                )));
            }
        }
    }
    let twisted = product(x, &d_operator(op.source_rank(), images)?)?;
    let a = product(&twisted, op)?;
    let b = product(x, op)?;
    Ok(is_isomorphic(&a, &b)?.is_some())
}

/// Decides, where possible, whether `X ⋊ Y` has automorphisms beyond those
/// induced by `Aut(X)` or by lifts of automorphisms of `Y`.
pub fn certify(
    x: &Premaniplex,
    op: &VoltageOperator,
    cap: usize,
    direct_limit: usize,
) -> Result<ExtraSymmetryCertificate> {
    require_connected(x)?;
    require_preserving(op, cap)?;
    let y = op.premaniplex();
    let aut_y = automorphisms(y)?;
    let orbit_of = |f: usize| {
        aut_y
            .orbits
            .iter()
            .position(|o| o.contains(&f))
            .expect("orbits partition the flags")
    };
    let base_orbit = orbit_of(0);
    let mut records = Vec::new();
    for y1 in 1..y.flag_count() {
        let orbit = orbit_of(y1);
        let mut record = FlagRecord {
            y1,
            orbit_rep: aut_y.orbits[orbit][0],
            in_base_orbit: orbit == base_orbit,
            z_flags: None,
            x_covers_z: None,
            capped: false,
        };
        match z_upsilon(op, y1, cap) {
            Ok(z) => {
                record.z_flags = Some(z.flag_count());
                record.x_covers_z = Some(covers(x, &z)?.is_some());
            }
            Err(Error::Capped { .. }) => record.capped = true,
            Err(e) => return Err(e),
        }
        records.push(record);
    }

    let p = product(x, op)?;
    let ky = op.flag_count();
    let aut_x_order = automorphisms(x)?.order();
    let lifts: Vec<LiftRecord> = aut_y
        .elements
        .iter()
        .map(|tau| LiftRecord {
            tau: tau.images().to_vec(),
            lifts: find_lift_in(&p, x.flag_count(), ky, tau).is_some(),
            preserves_voltages: preserves_voltages(op, tau),
        })
        .collect();
    let lifted_order = aut_x_order * lifts.iter().filter(|l| l.lifts).count();

    let open = |r: &&FlagRecord| r.capped || r.x_covers_z == Some(true);
    let any_open = records.iter().any(|r| open(&r));
    let open_outside = records.iter().any(|r| !r.in_base_orbit && open(&r));
    let mut product_aut_order = None;
    let verdict = if !any_open {
        Verdict::NoExtra
    } else if !open_outside {
        Verdict::NoExtraBeyondLifts
    } else if p.flag_count() <= direct_limit {
        let order = automorphisms(&p)?.order();
        product_aut_order = Some(order);
        if order > lifted_order {
            Verdict::ExtraPresent
        } else if lifted_order == aut_x_order {
            Verdict::NoExtra
        } else {
            Verdict::NoExtraBeyondLifts
        }
    } else {
        Verdict::Inconclusive
    };
    Ok(ExtraSymmetryCertificate {
        verdict,
        records,
        x_aut_order: aut_x_order,
        lifts,
        lifted_order,
        product_aut_order,
    })
}
