//! Coded, machine-readable findings attached to results.

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// Edge records whose citer and cited coincide were discarded.
    DroppedSelfCitations { count: u64 },
    /// Nodes that cite no one: zero columns, scored 0.
    ZeroColumns { nodes: Vec<usize> },
    /// Nodes with neither citations made nor received.
    IsolatedNodes { nodes: Vec<usize> },
    /// More than one recurrent class, so the score vector is not unique.
    NonUnique { classes: usize },
    /// Nodes outside the recurrent class are forced to zero by the reducible structure.
    ReducibleCaveat { nodes: Vec<usize> },
}

impl Diagnostic {
    pub fn code(&self) -> &'static str {
        match self {
            Diagnostic::DroppedSelfCitations { .. } => "dropped-self-citations",
            Diagnostic::ZeroColumns { .. } => "zero-columns",
            Diagnostic::IsolatedNodes { .. } => "isolated-nodes",
            Diagnostic::NonUnique { .. } => "non-unique",
            Diagnostic::ReducibleCaveat { .. } => "reducible-caveat",
        }
    }

    pub fn nodes(&self) -> &[usize] {
        match self {
            Diagnostic::ZeroColumns { nodes }
            | Diagnostic::IsolatedNodes { nodes }
            | Diagnostic::ReducibleCaveat { nodes } => nodes,
            _ => &[],
        }
    }

    pub fn message(&self) -> String {
        match self {
            Diagnostic::DroppedSelfCitations { count } => {
                format!("{count} self-citation record(s) dropped")
            }
            Diagnostic::ZeroColumns { nodes } => format!(
                "{} node(s) cite no one: their columns are zero, they score 0, \
                 and lambda = 1 is not guaranteed by the column sums",
                nodes.len()
            ),
            Diagnostic::IsolatedNodes { nodes } => format!(
                "{} node(s) neither cite nor are cited; kept with score 0",
                nodes.len()
            ),
            Diagnostic::NonUnique { classes } => format!(
                "non-unique eigenvector: {classes} recurrent classes with no citations \
                 between them have unrelated scores; no merged ranking is produced"
            ),
            Diagnostic::ReducibleCaveat { nodes } => format!(
                "reducible matrix: {} node(s) outside the recurrent class are forced to score 0; \
                 this outcome is unsatisfactory for ranking them and the reducible case calls \
                 for a different treatment, which is not applied here",
                nodes.len()
            ),
        }
    }
}
