//! Serializable reports and their plain-text renderings.

use std::fmt::Write;
use std::time::Instant;

use powercrit_core::criticality::{
    classify_element, classify_group, noncyclic_overgroup_witnesses, plain_critical_by_overgroups,
    ClassKind, GroupKind, NClassRecord, OvergroupCriterion,
};
use powercrit_core::frobenius::{recognize_critical_structure, CensusEntry};
use powercrit_core::partitions::{cyclic_partition, PartitionResult};
use powercrit_core::power_graph::Mode;
use powercrit_core::{AdjacencyOracle, Group, Result};
use serde::Serialize;

const STAR_LISTED: usize = 32;

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub group: String,
    pub order: usize,
    pub pi: Vec<u64>,
    pub is_eppo: bool,
    pub star: StarSummary,
    pub classes: Vec<ClassSummary>,
    pub flags: GroupKind,
    pub partition: PartitionSummary,
    pub frobenius: Option<FrobeniusSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarSummary {
    pub size: usize,
    pub members: Vec<String>,
    pub truncated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParamsSummary {
    pub p: u64,
    pub r: u32,
    pub s: u32,
    pub root: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub representative: String,
    pub representative_index: usize,
    pub element_order: u64,
    pub size: usize,
    pub kind: String,
    pub params: Option<ParamsSummary>,
    pub critical: bool,
    pub closure_size: usize,
    pub star_class: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupSummary {
    pub generator: String,
    pub order: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Obstruction {
    pub first: SubgroupSummary,
    pub second: SubgroupSummary,
    pub shared: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionSummary {
    pub outcome: String,
    pub trivial: Option<bool>,
    pub component_orders: Vec<u64>,
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrobeniusSummary {
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub b: u32,
    pub kernel_generator: String,
    pub complement_generator: String,
}

fn kind_name(kind: &ClassKind) -> &'static str {
    match kind {
        ClassKind::Plain => "plain",
        ClassKind::Compound(_) => "compound",
    }
}

fn class_summary(group: &Group, rec: &NClassRecord) -> ClassSummary {
    ClassSummary {
        representative: group.describe(rec.representative),
        representative_index: rec.representative,
        element_order: group.element_order(rec.representative),
        size: rec.size,
        kind: kind_name(&rec.kind).into(),
        params: rec.params().map(|c| ParamsSummary {
            p: c.p,
            r: c.r,
            s: c.s,
            root: group.describe(c.root),
        }),
        critical: rec.is_critical,
        closure_size: rec.closure_size,
        star_class: rec.is_star_class,
    }
}

fn partition_summary(group: &Group, result: &PartitionResult) -> PartitionSummary {
    let sub = |c: &powercrit_core::CyclicSubgroup| SubgroupSummary {
        generator: group.describe(c.generator),
        order: c.order,
    };
    match result {
        PartitionResult::Partition { components, trivial } => {
            let mut orders: Vec<u64> = components.iter().map(|c| c.order).collect();
            orders.sort_unstable();
            PartitionSummary {
                outcome: "partition".into(),
                trivial: Some(*trivial),
                component_orders: orders,
                obstruction: None,
            }
        }
        PartitionResult::NoPartition { obstruction, shared } => PartitionSummary {
            outcome: "no_partition".into(),
            trivial: None,
            component_orders: Vec::new(),
            obstruction: Some(Obstruction {
                first: sub(&obstruction.0),
                second: sub(&obstruction.1),
                shared: group.describe(*shared),
            }),
        },
        PartitionResult::TrivialGroup => PartitionSummary {
            outcome: "trivial_group".into(),
            trivial: None,
            component_orders: Vec::new(),
            obstruction: None,
        },
    }
}

/// The full report; needs a group within the materialization limit.
pub fn analyze(group: &Group, stable: bool) -> Result<AnalysisReport> {
    let start = Instant::now();
    let oracle = AdjacencyOracle::materialized(group)?;
    let (pi, is_eppo) = group.exponent_and_pi();
    let star = oracle.star_vertices();
    let mut classes = Vec::new();
    for class in &oracle.twin_partition()?.classes {
        let rec = classify_element(&oracle, class.first().unwrap())?;
        classes.push(class_summary(group, &rec));
    }
    let flags = classify_group(&oracle)?;
    let partition = partition_summary(group, &cyclic_partition(group)?);
    let frobenius = recognize_critical_structure(group).map(|s| FrobeniusSummary {
        p: s.p,
        a: s.a,
        q: s.q,
        b: s.b,
        kernel_generator: group.describe(s.kernel.generator),
        complement_generator: group.describe(s.complement.generator),
    });
    Ok(AnalysisReport {
        group: group.descriptor().to_string(),
        order: group.order(),
        pi,
        is_eppo,
        star: StarSummary {
            size: star.len(),
            members: star.iter().take(STAR_LISTED).map(|x| group.describe(x)).collect(),
            truncated: star.len() > STAR_LISTED,
        },
        classes,
        flags,
        partition,
        frobenius,
        timing_ms: (!stable).then(|| start.elapsed().as_millis() as u64),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementReport {
    pub group: String,
    pub group_order: usize,
    pub mode: String,
    pub element: String,
    pub index: usize,
    pub element_order: u64,
    pub class: ClassSummary,
    pub maximal: bool,
    pub overgroup_criterion: String,
    pub overgroup_counterexample: Option<String>,
    pub witnesses: Option<[String; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

/// A single-element report; works lazily above the materialization limit.
pub fn analyze_element(group: &Group, x: usize, stable: bool) -> Result<ElementReport> {
    let start = Instant::now();
    let oracle = AdjacencyOracle::new(group);
    let rec = classify_element(&oracle, x)?;
    let maximal = group.is_maximal_element(x);
    let (criterion, counterexample) = match plain_critical_by_overgroups(&oracle, x) {
        OvergroupCriterion::Holds => ("holds".to_string(), None),
        OvergroupCriterion::Fails { y } => ("fails".to_string(), Some(group.describe(y))),
        OvergroupCriterion::Inapplicable(why) => (format!("inapplicable: {why}"), None),
    };
    let witnesses = if rec.is_plain_critical() && !maximal {
        let cap = group.limits().closure_cap;
        let (y, z) = noncyclic_overgroup_witnesses(&oracle, x, cap)?;
        Some([group.describe(y), group.describe(z)])
    } else {
        None
    };
    Ok(ElementReport {
        group: group.descriptor().to_string(),
        group_order: group.order(),
        mode: match oracle.mode() {
            Mode::Materialized => "materialized",
            Mode::Lazy => "lazy",
        }
        .into(),
        element: group.describe(x),
        index: x,
        element_order: group.element_order(x),
        class: class_summary(group, &rec),
        maximal,
        overgroup_criterion: criterion,
        overgroup_counterexample: counterexample,
        witnesses,
        timing_ms: (!stable).then(|| start.elapsed().as_millis() as u64),
    })
}

/// Key-sorted JSON: `serde_json::Value` objects are ordered maps.
pub fn to_sorted_json<T: Serialize>(value: &T, pretty: bool) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    if pretty {
        serde_json::to_string_pretty(&v).unwrap()
    } else {
        serde_json::to_string(&v).unwrap()
    }
}

fn params_text(p: &Option<ParamsSummary>) -> String {
    match p {
        Some(p) => format!(" (p={}, r={}, s={}, root {})", p.p, p.r, p.s, p.root),
        None => String::new(),
    }
}

pub fn render_analysis(r: &AnalysisReport) -> String {
    let mut out = String::new();
    writeln!(out, "group {} of order {}", r.group, r.order).unwrap();
    writeln!(out, "primes {:?}, eppo {}", r.pi, r.is_eppo).unwrap();
    let more = if r.star.truncated { ", ..." } else { "" };
    writeln!(out, "star vertices ({}): {}{more}", r.star.size, r.star.members.join(", ")).unwrap();
    writeln!(out, "N-classes ({}):", r.classes.len()).unwrap();
    for c in &r.classes {
        writeln!(
            out,
            "  {:<24} order {:>4}  size {:>4}  {}{}{}  closure {}{}",
            c.representative,
            c.element_order,
            c.size,
            c.kind,
            params_text(&c.params),
            if c.critical { " critical" } else { "" },
            c.closure_size,
            if c.star_class { "  [star]" } else { "" }
        )
        .unwrap();
    }
    writeln!(
        out,
        "critical group {}, plain group {}, compound group {}",
        r.flags.is_critical_group, r.flags.is_plain_group, r.flags.is_compound_group
    )
    .unwrap();
    match r.partition.outcome.as_str() {
        "partition" => writeln!(
            out,
            "cyclic partition: {} components{} with orders {:?}",
            r.partition.component_orders.len(),
            if r.partition.trivial == Some(true) { " (trivial)" } else { "" },
            r.partition.component_orders
        )
        .unwrap(),
        "no_partition" => {
            let o = r.partition.obstruction.as_ref().unwrap();
            writeln!(
                out,
                "no cyclic partition: <{}> and <{}> share {}",
                o.first.generator, o.second.generator, o.shared
            )
            .unwrap()
        }
        _ => writeln!(out, "cyclic partition: trivial group").unwrap(),
    }
    match &r.frobenius {
        Some(f) => writeln!(
            out,
            "Frobenius C_{}^{} x| C_{}^{}: kernel <{}>, complement <{}>",
            f.p, f.a, f.q, f.b, f.kernel_generator, f.complement_generator
        )
        .unwrap(),
        None => writeln!(out, "no cyclic Frobenius structure with a, b >= 2").unwrap(),
    }
    if let Some(ms) = r.timing_ms {
        writeln!(out, "time {ms} ms").unwrap();
    }
    out
}

pub fn render_element(r: &ElementReport) -> String {
    let mut out = String::new();
    let c = &r.class;
    writeln!(out, "element {} of {} ({} mode)", r.element, r.group, r.mode).unwrap();
    writeln!(out, "order {}, maximal {}", r.element_order, r.maximal).unwrap();
    writeln!(
        out,
        "N-class size {}, {}{}, critical {}, closure {}",
        c.size,
        c.kind,
        params_text(&c.params),
        c.critical,
        c.closure_size
    )
    .unwrap();
    write!(out, "overgroup criterion: {}", r.overgroup_criterion).unwrap();
    if let Some(y) = &r.overgroup_counterexample {
        write!(out, " at {y}").unwrap();
    }
    out.push('\n');
    if let Some([y, z]) = &r.witnesses {
        writeln!(out, "non-cyclic overgroup witnesses: {y}, {z}").unwrap();
    }
    if let Some(ms) = r.timing_ms {
        writeln!(out, "time {ms} ms").unwrap();
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub params: String,
    pub p: u64,
    pub a: u32,
    pub q: u64,
    pub b: u32,
    pub r: u64,
    pub order: u64,
    pub canonical: bool,
    pub well_defined: bool,
    pub eppo: bool,
    pub frobenius: bool,
    pub critical: bool,
    pub reasons: Vec<String>,
    pub graph_critical: Option<bool>,
    pub agrees: Option<bool>,
}

impl From<&CensusEntry> for CensusRow {
    fn from(e: &CensusEntry) -> Self {
        let p = e.params;
        CensusRow {
            params: p.to_string(),
            p: p.p,
            a: p.a,
            q: p.q,
            b: p.b,
            r: p.r,
            order: e.order,
            canonical: e.canonical,
            well_defined: e.flags.well_defined,
            eppo: e.flags.eppo,
            frobenius: e.flags.frobenius,
            critical: e.flags.critical,
            reasons: e.flags.reasons.clone(),
            graph_critical: e.graph.map(|g| g.is_critical_group),
            agrees: e.graph.map(|g| g.agrees),
        }
    }
}

pub fn render_census(rows: &[CensusRow]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:>6}  {:<20} {:>5} {:>5} {:>5} {:>5}  graph",
        "order", "params", "eppo", "frob", "crit", "canon"
    )
    .unwrap();
    let yn = |b: bool| if b { "yes" } else { "no" };
    for r in rows {
        let graph = match (r.graph_critical, r.agrees) {
            (Some(c), Some(true)) => format!("{} (agrees)", if c { "critical" } else { "not critical" }),
            (Some(c), _) => format!("{} (DISAGREES)", if c { "critical" } else { "not critical" }),
            _ => "-".into(),
        };
        writeln!(
            out,
            "{:>6}  {:<20} {:>5} {:>5} {:>5} {:>5}  {}",
            r.order,
            r.params,
            yn(r.eppo),
            yn(r.frobenius),
            yn(r.critical),
            yn(r.canonical),
            graph
        )
        .unwrap();
    }
    let critical: Vec<&CensusRow> = rows.iter().filter(|r| r.critical).collect();
    let mut orders: Vec<u64> = critical.iter().map(|r| r.order).collect();
    orders.dedup();
    let verified = rows.iter().filter(|r| r.agrees.is_some()).count();
    let disagreements = rows.iter().filter(|r| r.agrees == Some(false)).count();
    writeln!(
        out,
        "{} entries, {} critical (orders {:?}), {} graph-verified, {} disagreements",
        rows.len(),
        critical.len(),
        orders,
        verified,
        disagreements
    )
    .unwrap();
    out
}
