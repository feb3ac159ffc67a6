use std::fmt;
use std::str::FromStr;

/// The homogeneous spaces handled by the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// Nondegenerate alternating forms of size 2n under GL_2n.
    Alternating,
    /// Hermitian forms over an unramified quadratic extension.
    Hermitian,
    /// Symmetric forms; no closed form, enumeration only.
    Symmetric,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::Alternating => "alternating",
            CaseTag::Hermitian => "hermitian",
            CaseTag::Symmetric => "symmetric",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alternating" => Ok(CaseTag::Alternating),
            "hermitian" | "hermitian_unramified" => Ok(CaseTag::Hermitian),
            "symmetric" => Ok(CaseTag::Symmetric),
            other => Err(format!("unknown case {other:?}")),
        }
    }
}
