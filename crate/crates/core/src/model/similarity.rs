use std::cmp::Ordering;

use super::{ModelError, Scalar};

/// A contracting similarity `x ↦ ratio·x + translate` of the unit interval.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityMap1D {
    ratio: Scalar,
    translate: Scalar,
}

impl SimilarityMap1D {
    pub fn new(ratio: Scalar, translate: Scalar) -> Result<Self, ModelError> {
        Self::validated(ratio, translate, "map")
    }

    pub(crate) fn validated(
        ratio: Scalar,
        translate: Scalar,
        path: &str,
    ) -> Result<Self, ModelError> {
        if ratio.cmp_strict(&Scalar::zero()) != Ordering::Greater
            || ratio.cmp_strict(&Scalar::one()) != Ordering::Less
        {
            return Err(ModelError::validation(
                format!("{path}.ratio"),
                format!("ratio {ratio} must lie in (0,1)"),
            ));
        }
        if translate.cmp_strict(&Scalar::zero()) == Ordering::Less
            || translate.add(&ratio).cmp_tolerant(&Scalar::one()) == Ordering::Greater
        {
            return Err(ModelError::validation(
                format!("{path}.translate"),
                format!("image [{translate}, {translate} + {ratio}] leaves [0,1]"),
            ));
        }
        Ok(SimilarityMap1D { ratio, translate })
    }

    pub fn ratio(&self) -> &Scalar {
        &self.ratio
    }

    pub fn translate(&self) -> &Scalar {
        &self.translate
    }

    pub fn apply(&self, x: f64) -> f64 {
        self.ratio.value() * x + self.translate.value()
    }
}

/// A finite family of similarity maps of `[0,1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SimilarityIfs1D {
    maps: Vec<SimilarityMap1D>,
    osc: bool,
}

impl SimilarityIfs1D {
    pub fn new(maps: Vec<SimilarityMap1D>) -> Result<Self, ModelError> {
        if maps.is_empty() {
            return Err(ModelError::validation("maps", "at least one map is required"));
        }
        let osc = images_interior_disjoint(&maps);
        Ok(SimilarityIfs1D { maps, osc })
    }

    /// Builds a system from `(ratio, translate)` pairs.
    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<Scalar>,
    {
        let maps = pairs
            .into_iter()
            .enumerate()
            .map(|(k, (r, t))| SimilarityMap1D::validated(r.into(), t.into(), &format!("maps[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(maps)
    }

    /// Equal-ratio system whose images are placed left to right with no
    /// overlap; used for projections and slices where only the ratios matter.
    pub fn from_ratios(ratios: &[Scalar]) -> Result<Self, ModelError> {
        let mut offset = Scalar::zero();
        let mut maps = Vec::with_capacity(ratios.len());
        for (k, r) in ratios.iter().enumerate() {
            maps.push(SimilarityMap1D::validated(r.clone(), offset.clone(), &format!("maps[{k}]"))?);
            offset = offset.add(r);
        }
        Self::new(maps)
    }

    pub fn maps(&self) -> &[SimilarityMap1D] {
        &self.maps
    }

    pub fn ratios(&self) -> Vec<f64> {
        self.maps.iter().map(|m| m.ratio.value()).collect()
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    /// True when the open image intervals are pairwise disjoint.
    pub fn osc(&self) -> bool {
        self.osc
    }
}

fn images_interior_disjoint(maps: &[SimilarityMap1D]) -> bool {
    let mut order: Vec<&SimilarityMap1D> = maps.iter().collect();
    order.sort_by(|a, b| a.translate.cmp_strict(&b.translate));
    order.windows(2).all(|w| {
        let end = w[0].translate.add(&w[0].ratio);
        end.cmp_tolerant(&w[1].translate) != Ordering::Greater
    })
}
