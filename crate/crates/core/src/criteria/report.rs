use rayon::prelude::*;
use serde::Serialize;

use super::subracks::{
    bounded_closure, classify_double, commuting_cliques, double_templates, DoubleFinding,
};
use super::typed::{centralizer_orbit_representatives, is_type_d_class, TypeDWitness};
use super::{is_quasireal, is_real, reason};
use crate::braiding::{BraidedSpace, CharacterCocycles, RootOfUnity};
use crate::error::{Error, Result};
use crate::nichols::{
    hilbert_prefix_with, prefix_from_dimension, GradedDims, NicholsCaps, RankMethod,
};
use crate::permcore::{ClassTable, PermutationGroup, DEFAULT_ORDER_CAP};
use crate::rack::DEFAULT_RACK_CAP;

/// Recorded whenever the `q_xx = 1` rule fires.
pub const QXX_LEMMA: &str =
    "external lemma: a one-dimensional braided subspace with q = 1 generates a polynomial subalgebra, so dim B(V) is infinite";

/// Attached to every group report.
pub const NAMING_NOTE: &str =
    "class names are local: <element order><letter>, letters assigned by class size and then smallest member; they need not match ATLAS names";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyzeOptions {
    /// Cap on `⟨r, s⟩`-orbits in the type-D scan.
    pub subgroup_cap: usize,
    /// Largest class turned into a dense cocycle for probes.
    pub rack_cap: usize,
    pub nichols: NicholsCaps,
    pub probe_hilbert: bool,
    pub abelian_max_size: usize,
    pub abelian_limit: usize,
    pub double_p_range: Vec<usize>,
    pub validate_cocycles: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            subgroup_cap: DEFAULT_ORDER_CAP,
            rack_cap: DEFAULT_RACK_CAP,
            nichols: NicholsCaps::default(),
            probe_hilbert: true,
            abelian_max_size: 4,
            abelian_limit: 8,
            double_p_range: vec![3, 5, 7],
            validate_cocycles: true,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Type D: every Nichols algebra over the class is infinite-dimensional.
    Collapses,
    /// `q_xx = 1` for every linear character; higher-dimensional ρ untested.
    CollapsesDim1,
    Unknown,
}

impl Verdict {
    /// Fixed precedence: type D first, then the linear-character rule.
    pub fn assemble(type_d: bool, qxx_one_all_linear: bool) -> Verdict {
        if type_d {
            Verdict::Collapses
        } else if qxx_one_all_linear {
            Verdict::CollapsesDim1
        } else {
            Verdict::Unknown
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Summary {
    AllClassesCollapse,
    Partial,
}

/// One linear character of the centralizer and its cocycle's diagonal value.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CharacterEvidence {
    pub index: usize,
    pub conductor: u64,
    pub q_xx: RootOfUnity,
    pub qxx_one: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiagonalData {
    pub character: usize,
    /// `q_{xy}` for `x, y` in the finding, in its point order.
    pub matrix: Vec<Vec<RootOfUnity>>,
    pub qxx_one: bool,
}

/// A commuting set of class members through the representative.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbelianFinding {
    pub indices: Vec<usize>,
    pub members: Vec<String>,
    pub diagonal: Vec<DiagonalData>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HilbertProbe {
    pub character: usize,
    pub series: GradedDims,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassReport {
    pub name: String,
    pub size: usize,
    pub element_order: u64,
    pub representative: String,
    pub centralizer_order: usize,
    pub real: bool,
    pub quasireal_exponents: Vec<u64>,
    pub inverse_class: String,
    pub type_d: Option<TypeDWitness>,
    pub type_d_complete: bool,
    pub unresolved_pairs: usize,
    pub characters: Vec<CharacterEvidence>,
    pub cocycles_validated: Option<bool>,
    pub abelian_findings: Vec<AbelianFinding>,
    pub double_findings: Vec<DoubleFinding>,
    pub hilbert_probes: Vec<HilbertProbe>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub class_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupReport {
    pub group: GroupInfo,
    pub classes: Vec<ClassReport>,
    pub summary: Summary,
    pub caveats: Vec<String>,
}

fn cap_note(context: &str, err: &Error) -> String {
    format!("{context}: {err}")
}

/// Evidence and verdict for the class at position `index` of `table`.
pub fn analyze_class(
    group: &PermutationGroup,
    table: &ClassTable,
    index: usize,
    options: &AnalyzeOptions,
) -> Result<ClassReport> {
    let cls = table.get(index);
    let s = &cls.representative;
    let mut notes = Vec::new();

    let typed = is_type_d_class(group, cls, options.subgroup_cap)?;
    let cc = CharacterCocycles::new(group, cls, s)?;

    let characters: Vec<CharacterEvidence> = (0..cc.len())
        .map(|k| {
            let q = cc.diagonal(k);
            CharacterEvidence {
                index: k,
                conductor: cc.characters()[k].conductor(),
                qxx_one: q.is_one(),
                q_xx: q,
            }
        })
        .collect();
    let qxx_one_all = characters.iter().all(|c| c.qxx_one);
    if characters.iter().any(|c| c.qxx_one) {
        notes.push(QXX_LEMMA.to_string());
    }

    let cocycles_validated = options.validate_cocycles.then(|| cc.validate());

    // abelian subracks through the representative
    let neighbours: Vec<usize> = (1..cls.size())
        .filter(|&y| {
            let m = &cls.members[y];
            m.compose(s) == s.compose(m)
        })
        .collect();
    let mut cliques = commuting_cliques(
        &neighbours,
        options.abelian_max_size.saturating_sub(1).max(1),
        options.abelian_limit,
        |a, b| {
            let (x, y) = (&cls.members[a], &cls.members[b]);
            x.compose(y) == y.compose(x)
        },
    );
    if options.abelian_max_size <= 1 || cliques.is_empty() {
        cliques = vec![Vec::new()];
    }
    let abelian_findings: Vec<AbelianFinding> = cliques
        .into_iter()
        .take(options.abelian_limit.max(1))
        .map(|mut c| {
            c.insert(0, 0);
            let diagonal = (0..cc.len())
                .map(|k| {
                    let matrix: Vec<Vec<RootOfUnity>> = c
                        .iter()
                        .map(|&a| c.iter().map(|&b| cc.value(k, a, b)).collect())
                        .collect();
                    let qxx_one = (0..c.len()).any(|i| matrix[i][i].is_one());
                    DiagonalData {
                        character: k,
                        matrix,
                        qxx_one,
                    }
                })
                .collect();
            AbelianFinding {
                members: c.iter().map(|&i| cls.members[i].to_string()).collect(),
                indices: c,
                diagonal,
            }
        })
        .collect();

    // double subracks seeded at the representative
    let templates = double_templates(&options.double_p_range);
    let limit = templates.iter().map(|(_, t)| t.size()).max().unwrap_or(0);
    let op = |x: usize, y: usize| {
        cls.index_of(&cls.members[x].conjugate(&cls.members[y]))
            .expect("class closed under conjugation")
    };
    let reps = centralizer_orbit_representatives(group, cls, 0)?;
    let candidates: Vec<Option<DoubleFinding>> = reps
        .par_iter()
        .filter(|&&b| b != 0)
        .map(|&b| {
            bounded_closure(&[0, b], limit, op).and_then(|z| classify_double(&z, op, &templates))
        })
        .collect();
    let mut double_findings: Vec<DoubleFinding> = Vec::new();
    for f in candidates.into_iter().flatten() {
        if !double_findings.iter().any(|g| g.indices == f.indices) {
            double_findings.push(f);
        }
    }

    let mut hilbert_probes: Vec<HilbertProbe> = Vec::new();
    if options.probe_hilbert {
        let mut computed: Vec<(Vec<u64>, usize)> = Vec::new();
        for (k, ev) in characters.iter().enumerate() {
            if ev.qxx_one {
                continue;
            }
            let key = cc.characters()[k].galois_key();
            if let Some((_, at)) = computed.iter().find(|(g, _)| *g == key) {
                let series = hilbert_probes[*at].series.clone();
                hilbert_probes.push(HilbertProbe {
                    character: k,
                    series,
                });
                continue;
            }
            if let Some(series) = prefix_from_dimension(cls.size(), &options.nichols) {
                hilbert_probes.push(HilbertProbe {
                    character: k,
                    series,
                });
                continue;
            }
            let q = match cc.cocycle(k, options.rack_cap) {
                Ok(q) => q,
                Err(e) => {
                    notes.push(cap_note(
                        &format!("hilbert probe for character {k} skipped"),
                        &e,
                    ));
                    continue;
                }
            };
            let space = BraidedSpace::new(q);
            match hilbert_prefix_with(&space, &options.nichols, RankMethod::Auto) {
                Ok(series) => {
                    computed.push((key, hilbert_probes.len()));
                    hilbert_probes.push(HilbertProbe {
                        character: k,
                        series,
                    });
                }
                Err(e) => notes.push(cap_note(
                    &format!("hilbert probe for character {k} failed"),
                    &e,
                )),
            }
        }
    }

    let verdict = Verdict::assemble(typed.is_type_d(), qxx_one_all);
    let mut reasons = Vec::new();
    if typed.is_type_d() {
        reasons.push(reason::TYPE_D);
    }
    if qxx_one_all {
        reasons.push(reason::QXX_ONE_ALL_LINEAR);
    }
    if hilbert_probes.iter().any(|p| p.series.total.is_some()) {
        reasons.push(reason::FINITE_HILBERT);
    }
    if hilbert_probes.iter().any(|p| p.series.total.is_none()) {
        reasons.push(reason::TRUNCATED_PROBE);
    }
    if !typed.complete {
        reasons.push(reason::UNRESOLVED_PAIRS);
    }
    if !double_findings.is_empty() {
        reasons.push(reason::DOUBLE_SUBRACK_FOUND);
    }
    if !abelian_findings.is_empty() {
        reasons.push(reason::ABELIAN_SUBRACK_FOUND);
    }

    Ok(ClassReport {
        name: cls.name.clone(),
        size: cls.size(),
        element_order: cls.element_order,
        representative: s.to_string(),
        centralizer_order: cc.centralizer().order(),
        real: is_real(cls),
        quasireal_exponents: is_quasireal(cls),
        inverse_class: table.get(table.inverse_class(group, index)).name.clone(),
        type_d_complete: typed.complete,
        unresolved_pairs: typed.unresolved_pairs,
        type_d: typed.witness,
        characters,
        cocycles_validated,
        abelian_findings,
        double_findings,
        hilbert_probes,
        verdict,
        reasons: reasons.into_iter().map(String::from).collect(),
        notes,
    })
}

/// Runs [`analyze_class`] on every class, in class-table order.
pub fn analyze_group(
    group: &PermutationGroup,
    name: &str,
    options: &AnalyzeOptions,
) -> Result<GroupReport> {
    let table = ClassTable::new(group);
    let classes: Vec<ClassReport> = (0..table.len())
        .into_par_iter()
        .map(|i| analyze_class(group, &table, i, options))
        .collect::<Result<_>>()?;
    let summary = if classes.iter().all(|c| c.verdict == Verdict::Collapses) {
        Summary::AllClassesCollapse
    } else {
        Summary::Partial
    };
    let mut caveats = vec![NAMING_NOTE.to_string()];
    let untested: Vec<&str> = classes
        .iter()
        .filter(|c| c.verdict != Verdict::Collapses)
        .map(|c| c.name.as_str())
        .collect();
    if !untested.is_empty() {
        caveats.push(format!(
            "representations of dimension > 1 are untested for classes without a type-D witness: {}",
            untested.join(", ")
        ));
    }
    caveats.push(
        "hilbert probes are evidence only: a truncated series proves nothing and a finite series is not a collapse"
            .to_string(),
    );
    Ok(GroupReport {
        group: GroupInfo {
            name: name.to_string(),
            degree: group.degree(),
            order: group.order(),
            generators: group.generators().iter().map(|g| g.to_string()).collect(),
            class_count: table.len(),
        },
        classes,
        summary,
        caveats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nichols::SeriesStatus;
    use crate::permcore::load_fixture;

    #[test]
    fn verdict_precedence() {
        assert_eq!(Verdict::assemble(true, false), Verdict::Collapses);
        assert_eq!(Verdict::assemble(true, true), Verdict::Collapses);
        assert_eq!(Verdict::assemble(false, true), Verdict::CollapsesDim1);
        assert_eq!(Verdict::assemble(false, false), Verdict::Unknown);
    }

    #[test]
    fn s3_report() {
        let g = load_fixture("S3", DEFAULT_ORDER_CAP).unwrap();
        let r = analyze_group(&g, "S3", &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.classes.len(), 3);
        assert_eq!(r.summary, Summary::Partial);
        let t = r.classes.iter().find(|c| c.name == "2a").unwrap();
        assert_eq!(t.verdict, Verdict::Unknown);
        assert!(t.type_d.is_none());
        assert_eq!(t.cocycles_validated, Some(true));
        let sign = t.characters.iter().find(|c| !c.qxx_one).unwrap();
        assert_eq!(sign.q_xx, RootOfUnity::minus_one());
        let probe = t
            .hilbert_probes
            .iter()
            .find(|p| p.character == sign.index)
            .unwrap();
        assert_eq!(probe.series.status, SeriesStatus::Complete);
        assert_eq!(probe.series.total, Some(12));
        assert!(t.reasons.contains(&"FINITE_HILBERT".to_string()));

        let identity = &r.classes[0];
        assert_eq!(identity.name, "1a");
        assert_eq!(identity.verdict, Verdict::CollapsesDim1);
        assert_eq!(identity.abelian_findings.len(), 1);
        assert_eq!(identity.abelian_findings[0].indices, vec![0]);
        assert!(identity.notes.iter().any(|n| n == QXX_LEMMA));
    }

    #[test]
    fn trivial_group_is_partial() {
        let g = load_fixture("trivial", DEFAULT_ORDER_CAP).unwrap();
        let r = analyze_group(&g, "trivial", &AnalyzeOptions::default()).unwrap();
        assert_eq!(r.classes.len(), 1);
        assert_eq!(r.summary, Summary::Partial);
    }

    #[test]
    fn probes_can_be_disabled() {
        let g = load_fixture("D3", DEFAULT_ORDER_CAP).unwrap();
        let options = AnalyzeOptions {
            probe_hilbert: false,
            ..AnalyzeOptions::default()
        };
        let r = analyze_group(&g, "D3", &options).unwrap();
        assert_eq!(r.classes.len(), 3);
        assert!(r.classes.iter().all(|c| c.hilbert_probes.is_empty()));
    }
}
