use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    UpperBound { vertex: usize, level: usize, up_degree: usize, bound: f64 },
    LowerBound { vertex: usize, level: usize, upstar_degree: usize, bound: f64 },
    Partition { vertex: usize, neighbor: usize, detail: &'static str },
    LevelOutOfRange { vertex: usize, level: usize },
}

impl Violation {
    pub fn vertex(&self) -> usize {
        match *self {
            Violation::UpperBound { vertex, .. }
            | Violation::LowerBound { vertex, .. }
            | Violation::Partition { vertex, .. }
            | Violation::LevelOutOfRange { vertex, .. } => vertex,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UpperBound { vertex, level, up_degree, bound } => {
                write!(f, "vertex {vertex} on level {level}: up-degree {up_degree} > {bound}")
            }
            Violation::LowerBound { vertex, level, upstar_degree, bound } => {
                write!(f, "vertex {vertex} on level {level}: up*-degree {upstar_degree} < {bound}")
            }
            Violation::Partition { vertex, neighbor, detail } => {
                write!(f, "vertex {vertex}, neighbor {neighbor}: {detail}")
            }
            Violation::LevelOutOfRange { vertex, level } => {
                write!(f, "vertex {vertex}: level {level} out of range")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InvariantReport {
    pub violations: Vec<Violation>,
}

impl InvariantReport {
    pub fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn mentions(&self, vertex: usize) -> bool {
        self.violations.iter().any(|v| v.vertex() == vertex)
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("no violations");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
