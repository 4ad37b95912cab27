use crate::error::{Error, Result};
use crate::quiver::{QPath, Quiver};
use crate::scalar::Scalar;

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<S> {
    pub terms: Vec<(S, QPath)>,
}

/// A bound quiver algebra `kQ/I`, given by generators of `I`.
#[derive(Clone, Debug)]
pub struct Algebra<S> {
    quiver: Quiver,
    relations: Vec<Relation<S>>,
}

impl<S: Scalar> Algebra<S> {
    pub fn new(quiver: Quiver, relations: Vec<Relation<S>>) -> Result<Self> {
        for (k, rel) in relations.iter().enumerate() {
            let Some((_, first)) = rel.terms.first() else {
                return Err(Error::Parse(format!("relation {k} has no terms")));
            };
            let ends = (first.start, first.end(&quiver));
            for (_, p) in &rel.terms {
                if p.len() < 2 {
                    return Err(Error::Parse(format!(
                        "relation {k} contains a path of length {}",
                        p.len()
                    )));
                }
                if (p.start, p.end(&quiver)) != ends {
                    return Err(Error::Parse(format!("relation {k} mixes non-parallel paths")));
                }
            }
        }
        Ok(Algebra { quiver, relations })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation<S>] {
        &self.relations
    }

    /// Whether two algebras share the same quiver (and so the same vertex and
    /// arrow numbering).
    pub fn same_quiver(&self, other: &Self) -> bool {
        self.quiver.vertices() == other.quiver.vertices() && self.quiver.arrows() == other.quiver.arrows()
    }
}
