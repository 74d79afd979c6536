//! p-adic classical groups, their standard maximal parahorics and the finite
//! reductive quotients attached to them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffpoly::{Ext, FieldSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Sp,
    SOodd,
    SOeven,
    Uunramified,
    Uramified,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Sp, Family::SOodd, Family::SOeven, Family::Uunramified, Family::Uramified];

    pub fn is_orthogonal(self) -> bool {
        matches!(self, Family::SOodd | Family::SOeven)
    }
}

/// A classical group over a p-adic field, described by the invariants of its space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroupSpec")]
pub struct GroupSpec {
    family: Family,
    epsilon: i8,
    witt_index: u32,
    aniso: [u32; 2],
    field: FieldSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupSpec {
    family: Family,
    epsilon: i8,
    witt_index: u32,
    aniso: [u32; 2],
    field: FieldSpec,
}

impl TryFrom<RawGroupSpec> for GroupSpec {
    type Error = Error;
    fn try_from(r: RawGroupSpec) -> Result<Self> {
        GroupSpec::new(r.family, r.epsilon, r.witt_index, r.aniso, r.field)
    }
}

impl GroupSpec {
    /// Reads the JSON form, separating shape errors from invalid parameters.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Shape {
            family: Family,
            epsilon: i8,
            witt_index: u32,
            aniso: [u32; 2],
            field: serde_json::Value,
        }
        let r: Shape = serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        GroupSpec::new(r.family, r.epsilon, r.witt_index, r.aniso, FieldSpec::from_json(&r.field)?)
    }

    pub fn new(family: Family, epsilon: i8, witt_index: u32, aniso: [u32; 2], field: FieldSpec) -> Result<Self> {
        let bad = |msg: String| Err(Error::Group(msg));
        if epsilon != 1 && epsilon != -1 {
            return bad(format!("epsilon must be 1 or -1, got {epsilon}"));
        }
        let d = 2 * witt_index + aniso[0] + aniso[1];
        let trivial = field.ext() == Ext::Trivial;
        match family {
            Family::Sp => {
                if epsilon != -1 || aniso != [0, 0] || !trivial {
                    return bad("Sp needs epsilon -1, no anisotropic part and a trivial extension".into());
                }
                if witt_index == 0 {
                    return bad("Sp(0) is the trivial group".into());
                }
            }
            Family::SOodd | Family::SOeven => {
                if epsilon != 1 || !trivial {
                    return bad("orthogonal groups need epsilon 1 and a trivial extension".into());
                }
                if aniso.iter().any(|&a| a > 2) {
                    return bad(format!("anisotropic split {aniso:?} exceeds 2 in a slot"));
                }
                let odd = d % 2 == 1;
                if odd != (family == Family::SOodd) {
                    return bad(format!("dimension {d} has the wrong parity for {family:?}"));
                }
                if odd && d < 3 {
                    return bad("SO(1) has a zero-dimensional dual".into());
                }
                if !odd && d == 0 {
                    return bad("SO(0) is the trivial group".into());
                }
                if d == 2 && witt_index == 1 {
                    return bad("the split SO(2) is excluded".into());
                }
            }
            Family::Uunramified => {
                if trivial {
                    return bad("unramified unitary groups need a quadratic residue extension".into());
                }
                if aniso.iter().any(|&a| a > 1) {
                    return bad(format!("anisotropic split {aniso:?} exceeds 1 in a slot"));
                }
                if d == 0 {
                    return bad("U(0) is the trivial group".into());
                }
            }
            Family::Uramified => {
                if !trivial {
                    return bad("ramified unitary groups have equal residue fields".into());
                }
                if aniso.iter().any(|&a| a > 2) || (aniso[0] > 0 && aniso[1] > 0) {
                    return bad(format!("anisotropic split {aniso:?} is not admissible"));
                }
                let orth = if epsilon == 1 { 0 } else { 1 };
                if aniso[1 - orth] != 0 {
                    return bad(format!("with epsilon {epsilon} the anisotropic part sits in slot {}", orth + 1));
                }
                if d == 0 {
                    return bad("U(0) is the trivial group".into());
                }
            }
        }
        Ok(GroupSpec { family, epsilon, witt_index, aniso, field })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn witt_index(&self) -> u32 {
        self.witt_index
    }

    pub fn aniso(&self) -> [u32; 2] {
        self.aniso
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dimension(&self) -> u32 {
        2 * self.witt_index + self.aniso[0] + self.aniso[1]
    }

    /// Dimension of the natural representation of the dual group.
    pub fn dual_dimension(&self) -> u32 {
        match self.family {
            Family::Sp => 2 * self.witt_index + 1,
            Family::SOodd => self.dimension() - 1,
            _ => self.dimension(),
        }
    }

    /// The slot carrying the orthogonal factor of a ramified unitary group.
    pub fn orthogonal_slot(&self) -> Option<usize> {
        match self.family {
            Family::Uramified => Some(if self.epsilon == 1 { 0 } else { 1 }),
            _ => None,
        }
    }

    fn factor(&self, slot: usize, n: u32) -> FiniteFactor {
        let an = self.aniso[slot];
        let orth = || {
            let dim = 2 * n + an;
            if an % 2 == 1 {
                FiniteFactor::SOodd(dim)
            } else {
                FiniteFactor::SOeven(dim, if an == 0 { 1 } else { -1 })
            }
        };
        match self.family {
            Family::Sp => FiniteFactor::Sp(2 * n),
            Family::SOodd | Family::SOeven => orth(),
            Family::Uunramified => FiniteFactor::U(2 * n + an),
            Family::Uramified => {
                if self.orthogonal_slot() == Some(slot) {
                    orth()
                } else {
                    FiniteFactor::Sp(2 * n)
                }
            }
        }
    }

    /// J_{n1,n2}, if n1 + n2 is the Witt index.
    pub fn parahoric(&self, n1: u32, n2: u32) -> Option<Parahoric> {
        if n1 + n2 != self.witt_index {
            return None;
        }
        let factors = [self.factor(0, n1), self.factor(1, n2)];
        let maximal = !factors.contains(&FiniteFactor::SOeven(2, 1));
        Some(Parahoric { group: *self, n: [n1, n2], factors, maximal })
    }

    /// All standard parahorics J_{N₁,N₂}, N₁ descending.
    pub fn parahorics(&self) -> Vec<Parahoric> {
        (0..=self.witt_index).rev().map(|n1| self.parahoric(n1, self.witt_index - n1).unwrap()).collect()
    }

    /// Every admissible (Witt index, anisotropic split) with this family, sign, field and dimension.
    pub fn forms(family: Family, epsilon: i8, field: FieldSpec, dimension: u32) -> Vec<GroupSpec> {
        let mut out = Vec::new();
        for a1 in 0..=2u32 {
            for a2 in 0..=2u32 {
                let an = a1 + a2;
                if an > dimension || (dimension - an) % 2 == 1 {
                    continue;
                }
                if let Ok(g) = GroupSpec::new(family, epsilon, (dimension - an) / 2, [a1, a2], field) {
                    out.push(g);
                }
            }
        }
        out.sort_by_key(|g| (std::cmp::Reverse(g.witt_index), g.aniso));
        out
    }

    /// Every group of the family with N_Ĝ ≤ `max_dual`; both signs for ramified
    /// unitary groups, ε = 1 for unramified ones.
    pub fn all_up_to(family: Family, field: FieldSpec, max_dual: u32) -> Vec<GroupSpec> {
        let signs: &[i8] = match family {
            Family::Sp => &[-1],
            Family::Uramified => &[1, -1],
            _ => &[1],
        };
        let mut out = Vec::new();
        for &eps in signs {
            for dim in 0..=max_dual + 1 {
                out.extend(GroupSpec::forms(family, eps, field, dim).into_iter().filter(|g| g.dual_dimension() <= max_dual));
            }
        }
        out
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Sp => "Sp",
            Family::SOodd | Family::SOeven => "SO",
            Family::Uunramified => "U",
            Family::Uramified => "U_ram",
        };
        write!(f, "{name}({}) [Witt index {}, aniso {:?}", self.dimension(), self.witt_index, self.aniso)?;
        if self.family == Family::Uramified {
            write!(f, ", epsilon {}", self.epsilon)?;
        }
        write!(f, ", {}]", self.field)
    }
}

/// Which of the four constraint regimes a finite factor falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    I,
    Ii,
    Iii,
    U,
}

/// A finite classical group over the residue field; the integer is the space dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FiniteFactor {
    Sp(u32),
    SOodd(u32),
    SOeven(u32, i8),
    U(u32),
}

impl FiniteFactor {
    pub fn case(&self) -> Case {
        match self {
            FiniteFactor::SOodd(_) => Case::I,
            FiniteFactor::Sp(_) => Case::Ii,
            FiniteFactor::SOeven(..) => Case::Iii,
            FiniteFactor::U(_) => Case::U,
        }
    }

    pub fn space_dim(&self) -> u32 {
        match *self {
            FiniteFactor::Sp(d) | FiniteFactor::SOodd(d) | FiniteFactor::SOeven(d, _) | FiniteFactor::U(d) => d,
        }
    }

    pub fn dual_dim(&self) -> u32 {
        match *self {
            FiniteFactor::Sp(d) => d + 1,
            FiniteFactor::SOodd(d) => d - 1,
            FiniteFactor::SOeven(d, _) | FiniteFactor::U(d) => d,
        }
    }

    /// Type of an even orthogonal factor.
    pub fn sign(&self) -> Option<i8> {
        match *self {
            FiniteFactor::SOeven(_, s) => Some(s),
            _ => None,
        }
    }

    pub fn is_orthogonal(&self) -> bool {
        matches!(self, FiniteFactor::SOodd(_) | FiniteFactor::SOeven(..))
    }
}

impl fmt::Display for FiniteFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FiniteFactor::Sp(d) => write!(f, "Sp{d}"),
            FiniteFactor::SOodd(d) => write!(f, "SO{d}"),
            FiniteFactor::SOeven(d, s) => write!(f, "SO{d}{}", if s > 0 { "+" } else { "-" }),
            FiniteFactor::U(d) => write!(f, "U{d}"),
        }
    }
}

/// The standard parahoric J_{N₁,N₂} of a group, with its two reductive-quotient factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parahoric {
    pub group: GroupSpec,
    pub n: [u32; 2],
    pub factors: [FiniteFactor; 2],
    pub maximal: bool,
}

impl Parahoric {
    /// Order of J/J°.
    pub fn component_group_order(&self) -> u32 {
        let nonzero = |i: usize| self.factors[i].space_dim() > 0;
        match self.group.family {
            Family::SOodd | Family::SOeven if nonzero(0) && nonzero(1) => 2,
            Family::Uramified if nonzero(self.group.orthogonal_slot().unwrap()) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Parahoric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J_{{{},{}}} ({} x {})", self.n[0], self.n[1], self.factors[0], self.factors[1])
    }
}
