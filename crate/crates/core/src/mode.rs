use std::fmt;

/// How a verdict was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Symbolic,
    /// Specializations at seeded random points; the listed points are in
    /// canonical `name=value` form.
    Probabilistic { points: Vec<String> },
}

impl Mode {
    pub fn kind(&self) -> &'static str {
        match self {
            Mode::Symbolic => "symbolic",
            Mode::Probabilistic { .. } => "probabilistic",
        }
    }

    pub fn points(&self) -> &[String] {
        match self {
            Mode::Symbolic => &[],
            Mode::Probabilistic { points } => points,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => write!(f, "symbolic"),
            Mode::Probabilistic { points } => write!(f, "probabilistic at {} points", points.len()),
        }
    }
}
