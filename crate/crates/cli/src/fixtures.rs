//! Built-in models addressed as `builtin:<name>`.

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Three blocks of three variables modulo
    /// `(x1,y1,z1) ∩ (x1,x2) ∩ (y1,y2) ∩ (z1,z2)`.
    Example37,
    /// Polynomial ring in `t` variables, one block.
    Example36 { t: u32 },
}

pub const DEFAULT_T: u32 = 3;

pub const EXAMPLE37: &str = "\
# 3 x 3 block ring
ring blocks = [[x1, x2, x3], [y1, y2, y3], [z1, z2, z3]]
ideal I = intersect((x1, y1, z1), (x1, x2), (y1, y2), (z1, z2))
";

impl Builtin {
    pub fn lookup(name: &str, t: Option<u32>) -> CliResult<Builtin> {
        match name {
            "example37" => Ok(Builtin::Example37),
            "example36" => {
                let t = t.unwrap_or(DEFAULT_T);
                if t == 0 {
                    return Err(CliError::Usage("--t must be positive".into()));
                }
                Ok(Builtin::Example36 { t })
            }
            other => Err(CliError::Usage(format!(
                "unknown builtin `{other}` (known: example36, example37)"
            ))),
        }
    }

    pub fn source(&self) -> String {
        match self {
            Builtin::Example37 => EXAMPLE37.to_string(),
            Builtin::Example36 { t } => {
                let names: Vec<String> = (1..=*t).map(|i| format!("X{i}")).collect();
                format!("ring blocks = [[{}]]\nideal I = (0)\n", names.join(", "))
            }
        }
    }
}
