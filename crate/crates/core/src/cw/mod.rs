//! Equivariant cellular chains of finite CW complexes over ℤ[π₁].

mod complex;
mod glue;
mod h1;
pub mod rewrite;
mod word;

pub use complex::{
    check_complex, euler_characteristic, family_diff, fox_complex, fox_derivative, subdivide_edge,
    CellComplex, CellFailure, CheckReport, FundamentalFamily,
};
pub use glue::{glue, CellMap, GlueData};
pub use h1::{h1, H1Class, H1};
pub use word::{GroupRingElement, Word};

use crate::error::{Error, Result};

/// Finite presentation with named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupPresentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl GroupPresentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g == "1" || g.contains(|c: char| c.is_whitespace() || c == '^') {
                return Err(Error::Malformed(format!("invalid generator name '{g}'")));
            }
            if generators[..i].contains(g) {
                return Err(Error::Malformed(format!("duplicate generator '{g}'")));
            }
        }
        for r in &relators {
            if r.max_generator().is_some_and(|m| m >= generators.len()) {
                return Err(Error::Malformed("relator uses an undeclared generator".into()));
            }
        }
        Ok(GroupPresentation { generators, relators })
    }

    /// Presentation from generator names and relator strings such as `"x y x^-1 y^-1"`.
    pub fn parse(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let names: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let rels = relators.iter().map(|r| Word::parse(r, &names)).collect::<Result<_>>()?;
        Self::new(names, rels)
    }

    pub fn free(names: &[&str]) -> Self {
        Self::parse(names, &[]).expect("valid names")
    }

    /// `⟨x, y | x y x⁻¹ y⁻¹⟩`.
    pub fn torus() -> Self {
        Self::parse(&["x", "y"], &["x y x^-1 y^-1"]).expect("valid")
    }

    /// `⟨a₁, b₁, …, a_g, b_g | Π [aᵢ, bᵢ]⟩`.
    pub fn surface(genus: usize) -> Self {
        let mut names = Vec::new();
        let mut rel = Vec::new();
        for i in 1..=genus {
            names.push(format!("a{i}"));
            names.push(format!("b{i}"));
            let (a, b) = (2 * i as i32 - 1, 2 * i as i32);
            rel.extend([a, b, -a, -b]);
        }
        let relators = if genus == 0 { vec![] } else { vec![Word::from_letters(rel)] };
        Self::new(names, relators).expect("valid")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn word(&self, s: &str) -> Result<Word> {
        Word::parse(s, &self.generators)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.generators)
    }

    pub fn rewriter(&self) -> rewrite::Rewriter {
        rewrite::Rewriter::new(&self.relators, rewrite::configured_budget())
    }
}
