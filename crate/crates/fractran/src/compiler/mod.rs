//! Flowchart DSL and fraction-list emitter.
//!
//! A flowchart is a set of nodes, each a distinct prime, with ordered
//! outgoing arrows labeled by positive fractions. The machine state is
//! `node · data`: the register carries exactly one node prime, and an
//! arrow `p → q` labeled `a/b` becomes the fraction `(a·q)/(b·p)` —
//! firing it consumes the source node, produces the target node, and
//! multiplies the data part by the label. Arrow order within a node is
//! the priority order, realized in the emitted list as relative order of
//! fractions sharing that source node.
//!
//! DSL:
//!
//! ```text
//! # addition
//! start 2
//! node 2:
//!   -> 2 * 2/3
//! ```
//!
//! `start <prime>` names the entry node; `node <prime>:` opens a block of
//! `-> <target> * <num>/<den>` arrows in priority order; `#` starts a
//! comment.
//!
//! Single-node charts are a degenerate case: with only one state there is
//! nothing to track, so the node prime is elided and the labels are
//! emitted bare (the chart above compiles to `{2/3}`). For multi-node
//! charts, labels must be coprime to every node prime and self-loops are
//! rejected (break them with an intermediate node); both rules keep node
//! transitions recoverable from the emitted fractions.

pub mod interp;

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::numerics::{is_prime_u64, Natural};
use crate::vm::{Fraction, Program};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FlowchartError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("node {0} is not prime")]
    NonPrimeNode(u64),
    #[error("node {0} defined twice")]
    DuplicateNode(u64),
    #[error("arrow from {from} targets unknown node {to}")]
    UnknownTarget { from: u64, to: u64 },
    #[error("no start node declared")]
    MissingStart,
    #[error("start node {0} is not defined")]
    UnknownStart(u64),
    #[error("label {label} of arrow {from} -> {to} shares a factor with node prime {node}")]
    LabelSharesNodeFactor {
        from: u64,
        to: u64,
        label: String,
        node: u64,
    },
    #[error("self-loop on node {0}: break it with an intermediate node")]
    SelfLoop(u64),
    #[error("chart has no nodes")]
    Empty,
}

/// An arrow `-> target * num/den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub target: u64,
    pub label_num: Natural,
    pub label_den: Natural,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub prime: u64,
    /// Outgoing arrows in priority order.
    pub arrows: Vec<Arrow>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flowchart {
    pub start: u64,
    /// Nodes in declaration order.
    pub nodes: Vec<Node>,
}

impl Flowchart {
    pub fn node_primes(&self) -> BTreeSet<u64> {
        self.nodes.iter().map(|n| n.prime).collect()
    }

    pub fn node(&self, prime: u64) -> Option<&Node> {
        self.nodes.iter().find(|n| n.prime == prime)
    }

    /// Structural validation; every constructor funnels through this.
    fn validate(&self) -> Result<(), FlowchartError> {
        if self.nodes.is_empty() {
            return Err(FlowchartError::Empty);
        }
        let mut seen = BTreeSet::new();
        for node in &self.nodes {
            if !is_prime_u64(node.prime) {
                return Err(FlowchartError::NonPrimeNode(node.prime));
            }
            if !seen.insert(node.prime) {
                return Err(FlowchartError::DuplicateNode(node.prime));
            }
        }
        if !seen.contains(&self.start) {
            return Err(FlowchartError::UnknownStart(self.start));
        }
        let multi = self.nodes.len() > 1;
        for node in &self.nodes {
            for arrow in &node.arrows {
                if !seen.contains(&arrow.target) {
                    return Err(FlowchartError::UnknownTarget {
                        from: node.prime,
                        to: arrow.target,
                    });
                }
                if multi {
                    if arrow.target == node.prime {
                        return Err(FlowchartError::SelfLoop(node.prime));
                    }
                    for &np in &seen {
                        let npn = Natural::from(np);
                        for part in [&arrow.label_num, &arrow.label_den] {
                            if part.gcd(&npn) != Natural::one() {
                                return Err(FlowchartError::LabelSharesNodeFactor {
                                    from: node.prime,
                                    to: arrow.target,
                                    label: format!("{}/{}", arrow.label_num, arrow.label_den),
                                    node: np,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parse the flowchart DSL.
pub fn parse_flowchart(text: &str) -> Result<Flowchart, FlowchartError> {
    let mut start = None;
    let mut nodes: Vec<Node> = Vec::new();
    let err = |line: usize, message: String| FlowchartError::Parse { line, message };
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("start") {
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| err(line, format!("bad start node {rest:?}")))?;
            if start.replace(p).is_some() {
                return Err(err(line, "start declared twice".into()));
            }
        } else if let Some(rest) = content.strip_prefix("node") {
            let rest = rest
                .trim()
                .strip_suffix(':')
                .ok_or_else(|| err(line, "expected `node <prime>:`".into()))?;
            let p: u64 = rest
                .trim()
                .parse()
                .map_err(|_| err(line, format!("bad node prime {rest:?}")))?;
            nodes.push(Node {
                prime: p,
                arrows: Vec::new(),
            });
        } else if let Some(rest) = content.strip_prefix("->") {
            let node = nodes
                .last_mut()
                .ok_or_else(|| err(line, "arrow before any node".into()))?;
            let (target_s, label_s) = rest
                .split_once('*')
                .ok_or_else(|| err(line, "expected `-> <prime> * <num>/<den>`".into()))?;
            let target: u64 = target_s
                .trim()
                .parse()
                .map_err(|_| err(line, format!("bad target {target_s:?}")))?;
            let (num_s, den_s) = label_s
                .split_once('/')
                .ok_or_else(|| err(line, "label must be <num>/<den>".into()))?;
            let parse_nat = |s: &str| -> Result<Natural, FlowchartError> {
                s.trim()
                    .parse()
                    .map_err(|_| err(line, format!("bad label part {s:?}")))
            };
            let label_num = parse_nat(num_s)?;
            let label_den = parse_nat(den_s)?;
            if label_num == Natural::from(0u32) || label_den == Natural::from(0u32) {
                return Err(err(line, "label parts must be positive".into()));
            }
            node.arrows.push(Arrow {
                target,
                label_num,
                label_den,
            });
        } else {
            return Err(err(line, format!("unrecognized line {content:?}")));
        }
    }
    let chart = Flowchart {
        start: start.ok_or(FlowchartError::MissingStart)?,
        nodes,
    };
    chart.validate()?;
    Ok(chart)
}

/// Where an emitted fraction came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: u64,
    pub target: u64,
    pub label_num: Natural,
    pub label_den: Natural,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} -> {} * {}/{}",
            self.source, self.target, self.label_num, self.label_den
        )
    }
}

/// A compiled chart: the program plus per-fraction provenance.
#[derive(Debug, Clone)]
pub struct CompiledProgram {
    pub program: Program,
    /// `provenance[i]` explains `program.fractions()[i]`.
    pub provenance: Vec<Provenance>,
}

/// Emit the fraction list for a flowchart.
///
/// Arrow `(p → q, a/b)` emits `(a·q)/(b·p)`. The global order is a greedy
/// stable sort by decreasing emitted denominator, constrained so that
/// fractions sharing a source node keep that node's arrow priority order
/// (cross-node order is cosmetic: a register carries exactly one node
/// prime, so fractions of other nodes can never fire). Single-node charts
/// emit bare labels in arrow order.
pub fn compile(chart: &Flowchart) -> Result<CompiledProgram, FlowchartError> {
    chart.validate()?;
    let single = chart.nodes.len() == 1;
    struct Pending {
        fraction: Fraction,
        provenance: Provenance,
    }
    // Per-node queues in declaration order; heads compete on denominator.
    let mut queues: Vec<std::collections::VecDeque<Pending>> = Vec::new();
    for node in &chart.nodes {
        let mut q = std::collections::VecDeque::new();
        for arrow in &node.arrows {
            let (num, den) = if single {
                (arrow.label_num.clone(), arrow.label_den.clone())
            } else {
                (
                    &arrow.label_num * Natural::from(arrow.target),
                    &arrow.label_den * Natural::from(node.prime),
                )
            };
            q.push_back(Pending {
                fraction: Fraction::new(num, den).expect("labels validated positive"),
                provenance: Provenance {
                    source: node.prime,
                    target: arrow.target,
                    label_num: arrow.label_num.clone(),
                    label_den: arrow.label_den.clone(),
                },
            });
        }
        queues.push(q);
    }
    let mut fractions = Vec::new();
    let mut provenance = Vec::new();
    loop {
        // Largest-denominator head wins; ties go to the earliest node.
        let mut best: Option<usize> = None;
        for (qi, q) in queues.iter().enumerate() {
            if let Some(head) = q.front() {
                match best {
                    None => best = Some(qi),
                    Some(b) => {
                        if head.fraction.den() > queues[b].front().unwrap().fraction.den() {
                            best = Some(qi);
                        }
                    }
                }
            }
        }
        match best {
            None => break,
            Some(qi) => {
                let p = queues[qi].pop_front().unwrap();
                fractions.push(p.fraction);
                provenance.push(p.provenance);
            }
        }
    }
    let program =
        Program::new(format!("chart-{}", chart.start), fractions).expect("validated nonempty");
    Ok(CompiledProgram {
        program,
        provenance,
    })
}

/// How a fraction relates to a node set on one side (numerator=target,
/// denominator=source).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeRole {
    /// Exactly one node prime divides this side.
    Unique(u64),
    /// No node prime divides this side.
    None,
    /// Several node primes divide this side; all candidates listed.
    Ambiguous(Vec<u64>),
}

impl NodeRole {
    pub fn unique(&self) -> Option<u64> {
        match self {
            NodeRole::Unique(p) => Some(*p),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub fraction: Fraction,
    pub source: NodeRole,
    pub target: NodeRole,
}

/// Recover node transitions from a fraction list: for each fraction, the
/// source is the node prime dividing its denominator and the target the
/// one dividing its numerator. Zero or multiple candidates annotate as
/// [`NodeRole::None`] / [`NodeRole::Ambiguous`] rather than failing.
pub fn annotate(program: &Program, node_primes: &BTreeSet<u64>) -> Vec<Annotation> {
    program
        .fractions()
        .iter()
        .map(|f| {
            let role = |part: &Natural| {
                let candidates: Vec<u64> = node_primes
                    .iter()
                    .copied()
                    .filter(|&p| (part % p) == Natural::from(0u32))
                    .collect();
                match candidates.len() {
                    0 => NodeRole::None,
                    1 => NodeRole::Unique(candidates[0]),
                    _ => NodeRole::Ambiguous(candidates),
                }
            };
            Annotation {
                fraction: f.clone(),
                source: role(f.den()),
                target: role(f.num()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_NODE: &str = "start 5\nnode 5:\n  -> 7 * 1/1\nnode 7:\n  -> 5 * 3/2\n";

    #[test]
    fn parses_single_node_self_loop() {
        let chart = parse_flowchart("start 2\nnode 2:\n  -> 2 * 2/3\n").unwrap();
        assert_eq!(chart.start, 2);
        assert_eq!(chart.nodes.len(), 1);
        assert_eq!(chart.nodes[0].arrows.len(), 1);
    }

    #[test]
    fn parses_two_node_cycle() {
        let chart = parse_flowchart(TWO_NODE).unwrap();
        assert_eq!(chart.node_primes().len(), 2);
        assert_eq!(chart.node(7).unwrap().arrows[0].target, 5);
    }

    #[test]
    fn rejects_structural_errors() {
        let e = parse_flowchart("start 6\nnode 6:\n  -> 6 * 1/2\n").unwrap_err();
        assert_eq!(e, FlowchartError::NonPrimeNode(6));
        let e = parse_flowchart("start 5\nnode 5:\n  -> 11 * 1/1\n").unwrap_err();
        assert_eq!(e, FlowchartError::UnknownTarget { from: 5, to: 11 });
        let e = parse_flowchart("node 5:\n  -> 5 * 1/1\n").unwrap_err();
        assert_eq!(e, FlowchartError::MissingStart);
        let e = parse_flowchart("start 5\nnode 5:\nnode 5:\n").unwrap_err();
        assert_eq!(e, FlowchartError::DuplicateNode(5));
        // Multi-node: label sharing a node factor.
        let e =
            parse_flowchart("start 5\nnode 5:\n  -> 7 * 5/2\nnode 7:\n  -> 5 * 1/1\n").unwrap_err();
        assert!(matches!(
            e,
            FlowchartError::LabelSharesNodeFactor { node: 5, .. }
        ));
        // Multi-node self-loop.
        let e =
            parse_flowchart("start 5\nnode 5:\n  -> 5 * 2/3\nnode 7:\n  -> 5 * 1/1\n").unwrap_err();
        assert_eq!(e, FlowchartError::SelfLoop(5));
    }

    #[test]
    fn compiles_addition_chart_to_bare_label() {
        let chart = parse_flowchart("start 2\nnode 2:\n  -> 2 * 2/3\n").unwrap();
        let compiled = compile(&chart).unwrap();
        assert_eq!(compiled.program.len(), 1);
        assert_eq!(
            compiled.program.fractions()[0],
            Fraction::from_u64(2, 3).unwrap()
        );
    }

    #[test]
    fn compiles_two_node_cycle_by_decreasing_denominator() {
        let chart = parse_flowchart(TWO_NODE).unwrap();
        let compiled = compile(&chart).unwrap();
        let texts: Vec<String> = compiled
            .program
            .fractions()
            .iter()
            .map(|f| f.to_string())
            .collect();
        // Emitted fractions are 7/5 (from node 5) and 15/14 (from node 7);
        // the 14-denominator sorts first.
        assert_eq!(texts, vec!["15/14", "7/5"]);
        assert_eq!(compiled.provenance[0].source, 7);
        assert_eq!(compiled.provenance[1].source, 5);
    }

    #[test]
    fn per_node_priority_survives_denominator_sort() {
        // Node 5's second arrow has a larger denominator than its first;
        // the sort must not reorder them.
        let chart = parse_flowchart(
            "start 5\nnode 5:\n  -> 7 * 1/2\n  -> 7 * 1/6\nnode 7:\n  -> 5 * 1/1\n",
        )
        .unwrap();
        let compiled = compile(&chart).unwrap();
        let dens: Vec<String> = compiled
            .program
            .fractions()
            .iter()
            .map(|f| f.den().to_string())
            .collect();
        assert_eq!(dens, vec!["10", "30", "7"]);
    }

    #[test]
    fn annotate_recovers_transitions_and_reports_ambiguity() {
        let node_set: BTreeSet<u64> = [89, 11, 47].into_iter().collect();
        let p = Program::from_u64_pairs("t", &[(517, 89), (2, 3)]).unwrap();
        let ann = annotate(&p, &node_set);
        assert_eq!(ann[0].source, NodeRole::Unique(89));
        assert_eq!(ann[0].target, NodeRole::Ambiguous(vec![11, 47]));
        assert_eq!(ann[1].source, NodeRole::None);
        assert_eq!(ann[1].target, NodeRole::None);

        let node_set: BTreeSet<u64> = [23, 79, 41, 29, 73].into_iter().collect();
        let p = Program::from_u64_pairs("t", &[(79, 575)]).unwrap();
        let ann = annotate(&p, &node_set);
        // 575 = 5²·23 and 79 is itself a node prime.
        assert_eq!(ann[0].source, NodeRole::Unique(23));
        assert_eq!(ann[0].target, NodeRole::Unique(79));
    }

    #[test]
    fn annotate_inverts_compile() {
        let chart = parse_flowchart(
            "start 5\nnode 5:\n  -> 7 * 4/9\n  -> 11 * 2/1\nnode 7:\n  -> 11 * 1/6\nnode 11:\n  -> 5 * 3/8\n",
        )
        .unwrap();
        let compiled = compile(&chart).unwrap();
        let ann = annotate(&compiled.program, &chart.node_primes());
        for (a, prov) in ann.iter().zip(&compiled.provenance) {
            assert_eq!(a.source, NodeRole::Unique(prov.source));
            assert_eq!(a.target, NodeRole::Unique(prov.target));
            // Label recovery: strip the node primes.
            let num = a.fraction.num() / Natural::from(prov.target);
            let den = a.fraction.den() / Natural::from(prov.source);
            assert_eq!(num, prov.label_num);
            assert_eq!(den, prov.label_den);
        }
    }
}
