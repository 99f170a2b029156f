//! Finite enumeration of the bound-state spectrum and degeneracy bookkeeping.

use crate::error::{Error, Result};
use crate::model::{ChannelModel, Geometry};
use crate::specfun::bessel_zeros;

use super::{delta_parallel, delta_squared_parallel, energy};

/// Relative tolerance for grouping energies into degeneracy classes.
pub const DEGENERACY_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantumNumbers {
    /// `(n, l, m)`: x-excitation and the two transverse box indices.
    Parallel { n: u32, l: u32, m: u32 },
    /// `(n, m, s)`: x-excitation, signed azimuthal number, 1-based radial index.
    Cylinder { n: u32, m: i32, s: u32 },
}

impl QuantumNumbers {
    pub fn n(&self) -> u32 {
        match *self {
            QuantumNumbers::Parallel { n, .. } | QuantumNumbers::Cylinder { n, .. } => n,
        }
    }

    /// Same transverse numbers with x-excitation `n`.
    pub fn with_n(self, n: u32) -> Self {
        match self {
            QuantumNumbers::Parallel { l, m, .. } => QuantumNumbers::Parallel { n, l, m },
            QuantumNumbers::Cylinder { m, s, .. } => QuantumNumbers::Cylinder { n, m, s },
        }
    }

    pub fn validate_for(&self, model: &ChannelModel) -> Result<()> {
        match (self, model.geometry()) {
            (QuantumNumbers::Parallel { .. }, Geometry::Parallelepipedal) => Ok(()),
            (QuantumNumbers::Cylinder { s, .. }, Geometry::Cylindrical { .. }) => {
                if *s == 0 {
                    Err(Error::InvalidParameter("radial index s must be >= 1".into()))
                } else {
                    Ok(())
                }
            }
            _ => Err(Error::InvalidParameter(
                "quantum numbers do not match the channel geometry".into(),
            )),
        }
    }

    fn tie_key(&self) -> (u32, i64, i64, i64) {
        match *self {
            QuantumNumbers::Parallel { n, l, m } => (n, l as i64, m as i64, 0),
            QuantumNumbers::Cylinder { n, m, s } => (n, m.unsigned_abs() as i64, s as i64, m.signum() as i64),
        }
    }
}

impl std::fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuantumNumbers::Parallel { n, l, m } => write!(f, "(n={n}, l={l}, m={m})"),
            QuantumNumbers::Cylinder { n, m, s } => write!(f, "(n={n}, m={m}, s={s})"),
        }
    }
}

/// Truncation of the infinite spectrum. `l_max` is ignored for the cylinder,
/// `s_max` for the parallelepiped; `m_max` bounds `|m|` for the cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub n_max: u32,
    pub l_max: u32,
    pub m_max: u32,
    pub s_max: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            n_max: 2,
            l_max: 2,
            m_max: 2,
            s_max: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub qn: QuantumNumbers,
    pub delta: f64,
    pub energy: f64,
    pub degeneracy_class: usize,
}

/// Exact identity of a parallel-channel level: the energy depends only on
/// `2n + √D`, with `D = (l+1)² + (m+1)²`. Two such numbers coincide iff
/// `(n, D)` agree, or both `D` are perfect squares with equal `2n + √D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExactLevel {
    Irrational { n: u32, d: u64 },
    Integer(u64),
}

fn exact_level(qn: &QuantumNumbers) -> Option<ExactLevel> {
    match *qn {
        QuantumNumbers::Parallel { n, l, m } => {
            let d = delta_squared_parallel(l, m);
            let root = (d as f64).sqrt().round() as u64;
            Some(if root * root == d {
                ExactLevel::Integer(2 * n as u64 + root)
            } else {
                ExactLevel::Irrational { n, d }
            })
        }
        QuantumNumbers::Cylinder { .. } => None,
    }
}

/// Enumerates all states within `caps`, sorted by energy, with degeneracy
/// classes grouped at [`DEGENERACY_REL_TOL`].
pub fn enumerate_spectrum(model: &ChannelModel, caps: Caps) -> Result<Vec<SpectrumEntry>> {
    enumerate_spectrum_with_tol(model, caps, DEGENERACY_REL_TOL)
}

pub fn enumerate_spectrum_with_tol(model: &ChannelModel, caps: Caps, rel_tol: f64) -> Result<Vec<SpectrumEntry>> {
    if !(rel_tol >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "degeneracy tolerance must be >= 0, got {rel_tol}"
        )));
    }
    let mut entries = Vec::new();
    match model.geometry() {
        Geometry::Parallelepipedal => {
            for l in 0..=caps.l_max {
                for m in 0..=caps.m_max {
                    let delta = delta_parallel(l, m);
                    for n in 0..=caps.n_max {
                        entries.push(SpectrumEntry {
                            qn: QuantumNumbers::Parallel { n, l, m },
                            delta,
                            energy: energy(model, n, delta),
                            degeneracy_class: 0,
                        });
                    }
                }
            }
        }
        Geometry::Cylindrical { radius } => {
            let scale = model.q() * radius;
            for order in 0..=caps.m_max {
                for zero in bessel_zeros(order, caps.s_max)? {
                    let delta = zero.value / scale;
                    let signs: &[i32] = if order == 0 { &[0] } else { &[-1, 1] };
                    for &sign in signs {
                        let m = sign * order as i32;
                        for n in 0..=caps.n_max {
                            entries.push(SpectrumEntry {
                                qn: QuantumNumbers::Cylinder { n, m, s: zero.index },
                                delta,
                                energy: energy(model, n, delta),
                                degeneracy_class: 0,
                            });
                        }
                    }
                }
            }
        }
    }

    entries.sort_by(|a, b| {
        a.energy
            .total_cmp(&b.energy)
            .then_with(|| a.qn.tie_key().cmp(&b.qn.tie_key()))
    });

    // Tolerance groups of consecutive energies, then exact refinement.
    let mut group_of = vec![0usize; entries.len()];
    let mut group = 0;
    let mut anchor = entries.first().map(|e| e.energy).unwrap_or(0.0);
    for (i, e) in entries.iter().enumerate() {
        if (e.energy - anchor).abs() > rel_tol * anchor.abs() {
            group += 1;
            anchor = e.energy;
        }
        group_of[i] = group;
    }

    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&i, &j| {
        group_of[i]
            .cmp(&group_of[j])
            .then_with(|| entries[i].qn.tie_key().cmp(&entries[j].qn.tie_key()))
    });
    let mut sorted: Vec<SpectrumEntry> = order.iter().map(|&i| entries[i].clone()).collect();
    let sorted_groups: Vec<usize> = order.iter().map(|&i| group_of[i]).collect();

    let mut next_class = 0usize;
    let mut start = 0;
    while start < sorted.len() {
        let mut end = start;
        while end < sorted.len() && sorted_groups[end] == sorted_groups[start] {
            end += 1;
        }
        // (representative level, class id) pairs inside this tolerance group
        let mut seen: Vec<(Option<ExactLevel>, usize)> = Vec::new();
        for e in &mut sorted[start..end] {
            let level = exact_level(&e.qn);
            let id = match seen.iter().find(|(l, _)| *l == level) {
                Some(&(_, id)) => id,
                None => {
                    seen.push((level, next_class));
                    next_class += 1;
                    next_class - 1
                }
            };
            e.degeneracy_class = id;
        }
        start = end;
    }
    Ok(sorted)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegeneracyKind {
    /// Two parallel-channel states related by `l ↔ m`.
    Exchange,
    /// Two cylinder states related by `m ↔ −m`.
    Sign,
    /// Members not all related by a symmetry.
    Accidental,
    /// Single member.
    None,
}

impl DegeneracyKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DegeneracyKind::Exchange => "exchange",
            DegeneracyKind::Sign => "sign",
            DegeneracyKind::Accidental => "accidental",
            DegeneracyKind::None => "none",
        }
    }
}

impl std::fmt::Display for DegeneracyKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyClass {
    pub id: usize,
    pub energy: f64,
    pub members: Vec<QuantumNumbers>,
    pub kind: DegeneracyKind,
}

/// Collects entries by their class id (in order of first appearance) and tags
/// each class.
pub fn degeneracy_report(entries: &[SpectrumEntry]) -> Vec<DegeneracyClass> {
    let mut classes: Vec<DegeneracyClass> = Vec::new();
    for e in entries {
        match classes.iter_mut().find(|c| c.id == e.degeneracy_class) {
            Some(c) => c.members.push(e.qn),
            None => classes.push(DegeneracyClass {
                id: e.degeneracy_class,
                energy: e.energy,
                members: vec![e.qn],
                kind: DegeneracyKind::None,
            }),
        }
    }
    for c in &mut classes {
        c.kind = classify(&c.members);
    }
    classes
}

fn classify(members: &[QuantumNumbers]) -> DegeneracyKind {
    match members {
        [] | [_] => DegeneracyKind::None,
        [a, b] => {
            match (*a, *b) {
                (
                    QuantumNumbers::Parallel { n: n1, l: l1, m: m1 },
                    QuantumNumbers::Parallel { n: n2, l: l2, m: m2 },
                ) if n1 == n2 && l1 == m2 && m1 == l2 => DegeneracyKind::Exchange,
                (
                    QuantumNumbers::Cylinder { n: n1, m: m1, s: s1 },
                    QuantumNumbers::Cylinder { n: n2, m: m2, s: s2 },
                ) if n1 == n2 && s1 == s2 && m1 == -m2 && m1 != 0 => DegeneracyKind::Sign,
                _ => DegeneracyKind::Accidental,
            }
        }
        _ => DegeneracyKind::Accidental,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn par() -> ChannelModel {
        ChannelModel::parallelepipedal(1.0, 1.0).unwrap()
    }

    fn caps(n_max: u32, l_max: u32, m_max: u32, s_max: u32) -> Caps {
        Caps {
            n_max,
            l_max,
            m_max,
            s_max,
        }
    }

    fn p(n: u32, l: u32, m: u32) -> QuantumNumbers {
        QuantumNumbers::Parallel { n, l, m }
    }

    fn class_of(entries: &[SpectrumEntry], qn: QuantumNumbers) -> usize {
        entries.iter().find(|e| e.qn == qn).unwrap().degeneracy_class
    }

    #[test]
    fn single_ground_state() {
        let s = enumerate_spectrum(&par(), caps(0, 0, 0, 0)).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].energy - (4.0 + 3.0 * 2f64.sqrt())).abs() < 1e-13);
    }

    #[test]
    fn accidental_sqrt85_class() {
        let s = enumerate_spectrum(&par(), caps(0, 9, 9, 0)).unwrap();
        assert_eq!(s.len(), 100);
        let id = class_of(&s, p(0, 1, 8));
        for qn in [p(0, 8, 1), p(0, 5, 6), p(0, 6, 5)] {
            assert_eq!(class_of(&s, qn), id);
        }
        let members: Vec<_> = s.iter().filter(|e| e.degeneracy_class == id).map(|e| e.qn).collect();
        assert_eq!(members, vec![p(0, 1, 8), p(0, 5, 6), p(0, 6, 5), p(0, 8, 1)]);
    }

    #[test]
    fn sorted_and_class_ids_consistent() {
        let s = enumerate_spectrum(&par(), caps(3, 6, 6, 0)).unwrap();
        for w in s.windows(2) {
            assert!(w[0].energy <= w[1].energy * (1.0 + 1e-12));
        }
        for a in &s {
            for b in &s {
                let same = a.degeneracy_class == b.degeneracy_class;
                let close = (a.energy - b.energy).abs() <= 1e-12 * a.energy;
                assert_eq!(same, close, "{} {}", a.qn, b.qn);
            }
        }
    }

    #[test]
    fn exchange_is_bitwise() {
        let s = enumerate_spectrum(&par(), caps(4, 7, 7, 0)).unwrap();
        for e in &s {
            if let QuantumNumbers::Parallel { n, l, m } = e.qn {
                let swapped = s.iter().find(|o| o.qn == p(n, m, l)).unwrap();
                assert_eq!(e.energy.to_bits(), swapped.energy.to_bits());
            }
        }
    }

    #[test]
    fn cross_level_integer_coincidence() {
        // δ = 13 (l,m)=(4,11) at n=0 and δ = 5 (l,m)=(2,3) at n=4: 2n + δ = 13
        let s = enumerate_spectrum(&par(), caps(4, 11, 11, 0)).unwrap();
        assert_eq!(class_of(&s, p(0, 4, 11)), class_of(&s, p(4, 2, 3)));
        let report = degeneracy_report(&s);
        let c = report.iter().find(|c| c.members.contains(&p(0, 4, 11))).unwrap();
        assert_eq!(c.kind, DegeneracyKind::Accidental);
    }

    #[test]
    fn cylinder_sign_pairs() {
        let m = ChannelModel::cylindrical(1.0, 1.0, 1.0).unwrap();
        let s = enumerate_spectrum(&m, caps(0, 0, 1, 1)).unwrap();
        assert_eq!(s.len(), 3);
        let plus = class_of(&s, QuantumNumbers::Cylinder { n: 0, m: 1, s: 1 });
        let minus = class_of(&s, QuantumNumbers::Cylinder { n: 0, m: -1, s: 1 });
        assert_eq!(plus, minus);
        // tie-break puts the negative sign first
        assert_eq!(s[1].qn, QuantumNumbers::Cylinder { n: 0, m: -1, s: 1 });
        let report = degeneracy_report(&s);
        assert_eq!(report.len(), 2);
        assert_eq!(report[1].kind, DegeneracyKind::Sign);
        assert_eq!(report[0].kind, DegeneracyKind::None);
    }

    #[test]
    fn report_tags() {
        let s = enumerate_spectrum(&par(), caps(0, 9, 9, 0)).unwrap();
        let pick = |qns: &[QuantumNumbers]| -> Vec<SpectrumEntry> {
            s.iter().filter(|e| qns.contains(&e.qn)).cloned().collect()
        };
        let r = degeneracy_report(&pick(&[p(0, 1, 8), p(0, 8, 1)]));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, DegeneracyKind::Exchange);
        let r = degeneracy_report(&pick(&[p(0, 1, 8), p(0, 5, 6)]));
        assert_eq!(r[0].kind, DegeneracyKind::Accidental);
        let r = degeneracy_report(&pick(&[p(0, 0, 6), p(0, 4, 4)]));
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].kind, DegeneracyKind::Accidental);
        let r = degeneracy_report(&pick(&[p(0, 2, 2)]));
        assert_eq!(r[0].kind, DegeneracyKind::None);
    }

    #[test]
    fn no_accidental_classes_for_small_caps() {
        let s = enumerate_spectrum(&par(), caps(3, 1, 1, 0)).unwrap();
        let report = degeneracy_report(&s);
        assert!(report.iter().all(|c| c.kind != DegeneracyKind::Accidental));
        assert_eq!(report.iter().filter(|c| c.kind == DegeneracyKind::Exchange).count(), 4);
    }

    #[test]
    fn positivity() {
        let m = ChannelModel::cylindrical(0.3, 0.2, 5.0).unwrap();
        let s = enumerate_spectrum(&m, caps(3, 0, 3, 3)).unwrap();
        assert!(s.iter().all(|e| e.energy > 0.0 && e.delta > 0.0));
    }
}
