//! A computation session: the algebra, its resolution, and write-once caches
//! of comultiplication slices and cohomology groups.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::algebra::GradedAlgebra;
use crate::comult::{compute_slice, ComultSlice, ComultTable};
use crate::hochschild::{compute_group, CohomologyGroup};
use crate::presentation::Presentation;
use crate::resolution::{compute_levels, exactness_report, override_basis, ExactnessReport, ResolutionData};
use crate::scalar::Field;
use crate::tensor::TensorElement;
use crate::Error;

type SliceCell = OnceLock<Result<Arc<ComultSlice>, Error>>;

#[derive(Debug)]
pub struct Session {
    algebra: Arc<GradedAlgebra>,
    resolution: ResolutionData,
    slices: Vec<Vec<SliceCell>>,
    exactness: OnceLock<Result<ExactnessReport, Error>>,
    groups: Mutex<HashMap<(usize, usize), Arc<CohomologyGroup>>>,
}

impl Session {
    /// Builds `Λ` and the resolution up to `presentation.maxdeg`.
    pub fn new(presentation: Presentation) -> Result<Session, Error> {
        let algebra = Arc::new(GradedAlgebra::new(presentation));
        let resolution = compute_levels(&algebra, algebra.bound())?;
        Ok(Session::from_parts(algebra, resolution))
    }

    pub fn from_parts(algebra: Arc<GradedAlgebra>, resolution: ResolutionData) -> Session {
        let top = resolution.max_degree();
        Session {
            slices: (0..=top).map(|n| (0..=n).map(|_| OnceLock::new()).collect()).collect(),
            exactness: OnceLock::new(),
            groups: Mutex::new(HashMap::new()),
            algebra,
            resolution,
        }
    }

    /// A new session with the level-`n` basis replaced; caches start empty.
    pub fn override_basis(&self, n: usize, elements: &[TensorElement]) -> Result<Session, Error> {
        let data = override_basis(&self.resolution, &self.algebra, n, elements)?;
        Ok(Session::from_parts(Arc::clone(&self.algebra), data))
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn resolution(&self) -> &ResolutionData {
        &self.resolution
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    /// Highest computed resolution level.
    pub fn max_level(&self) -> usize {
        self.resolution.max_degree()
    }

    /// The slice `c_pq(n, ·, r)`, computed on first use.
    pub fn comult(&self, n: usize, r: usize) -> Result<Arc<ComultSlice>, Error> {
        assert!(r <= n, "split point exceeds degree");
        let cell = self.slices.get(n).ok_or(Error::LevelOutOfRange {
            n,
            bound: self.max_level(),
        })?;
        cell[r]
            .get_or_init(|| compute_slice(&self.algebra, &self.resolution, n, r).map(Arc::new))
            .clone()
    }

    /// Every slice `(n, r)` with `n ≤ max_level`.
    pub fn full_table(&self) -> Result<ComultTable, Error> {
        let mut table = ComultTable::new();
        for n in 0..=self.max_level() {
            for r in 0..=n {
                table.insert(self.comult(n, r)?);
            }
        }
        Ok(table)
    }

    /// Homology of the augmented resolution over the computed range.
    pub fn exactness(&self) -> Result<&ExactnessReport, Error> {
        self.exactness
            .get_or_init(|| exactness_report(self))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Fails unless the resolution is exact over the computed range.
    pub fn require_exact(&self) -> Result<(), Error> {
        self.exactness()?.check()
    }

    /// `HH^{n,w}` with its cocycle and coboundary spaces, cached.
    pub fn cohomology_group(&self, n: usize, weight: usize) -> Result<Arc<CohomologyGroup>, Error> {
        if let Some(g) = self.groups.lock().expect("cache lock").get(&(n, weight)) {
            return Ok(Arc::clone(g));
        }
        let group = Arc::new(compute_group(self, n, weight)?);
        let mut cache = self.groups.lock().expect("cache lock");
        Ok(Arc::clone(cache.entry((n, weight)).or_insert(group)))
    }
}
