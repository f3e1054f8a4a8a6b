use dyad_core::{ChainSpec, CollectionDoc, DyadicInterval, IntervalSet, Rational, StageFamily};
use serde::Serialize;

/// JSON view of a counterexample family.
#[derive(Serialize)]
pub struct FamilyDoc {
    pub spec: ChainSpec,
    pub d: u32,
    pub eta: Rational,
    /// `L_1 ⊂ … ⊂ L_{n+2}`.
    pub chain: Vec<DyadicInterval>,
    /// `P_1, …, P_{n+1}`.
    pub brothers: Vec<DyadicInterval>,
    pub i_leaves: Vec<DyadicInterval>,
    pub j_leaves: Vec<DyadicInterval>,
    /// `C(0), …, C(n-1)` with their forced colourings, then `C(n)` with the
    /// last added leaf uncoloured.
    pub stages: Vec<CollectionDoc>,
}

impl FamilyDoc {
    pub fn new(fam: &StageFamily) -> FamilyDoc {
        let n = fam.n() as usize;
        let eta = fam.params().eta();
        let mut stages: Vec<CollectionDoc> = (0..n)
            .map(|k| CollectionDoc::from_colouring(&fam.forced_colouring(k), eta))
            .collect();
        let last = IntervalSet::from_intervals(fam.j(), [fam.added(n)])
            .and_then(|added| fam.forced_colouring(n - 1).extended(&added))
            .expect("the added leaf lies outside the previous stage");
        stages.push(CollectionDoc::from_colouring(&last, eta));
        FamilyDoc {
            spec: fam.spec().clone(),
            d: fam.d(),
            eta,
            chain: (1..=n + 2).map(|i| fam.chain(i)).collect(),
            brothers: (1..=n + 1).map(|i| fam.brother(i)).collect(),
            i_leaves: (1..fam.d() as usize).map(|i| fam.i_leaf(i)).collect(),
            j_leaves: (1..=n + 1).map(|i| fam.j_leaf(i)).collect(),
            stages,
        }
    }
}
