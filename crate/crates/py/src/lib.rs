//! Python bindings: a `Matroid` class wrapping the rank oracle (with
//! truncation and minor constructors), coloring checks, and the instance
//! generators. Subsets cross the boundary as lists of indices.

use std::path::PathBuf;
use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use matroidal::analysis::{check_aggregate_inequality, find_line_cover};
use matroidal::coloring::{check_conditions, count_monochromatic_blue_hyperplanes, Coloring};
use matroidal::constructions::{
    fig1_configuration, graphic_construction, line_adjoined_construction,
    parallel_copies_construction, random_instance, ColoredInstance,
};
use matroidal::degeneracy::{is_k_degenerate, optimal_stratification};
use matroidal::flats::{average_hyperplane_size, enumerate_flats, hyperplanes, lines};
use matroidal::rational::format_rational;
use matroidal::truncation::k_fold_truncation;
use matroidal::{LinearMatroid, RankOracle, Subset};

fn err(e: matroidal::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_subset(indices: Vec<usize>, n: usize) -> PyResult<Subset> {
    for &i in &indices {
        if i >= n {
            return Err(PyValueError::new_err(format!(
                "index {i} out of range for ground set of size {n}"
            )));
        }
    }
    Ok(Subset::from_indices(indices))
}

/// A matroid handle: a coordinate matroid, possibly with truncations or a
/// coloring attached.
#[pyclass]
struct Matroid {
    oracle: Arc<dyn RankOracle>,
    /// Set when the oracle is an untruncated coordinate matroid; needed by
    /// constructions that extend the coordinate representation.
    linear: Option<Arc<LinearMatroid>>,
    coloring: Option<Coloring>,
}

impl Matroid {
    fn from_linear(m: LinearMatroid, coloring: Option<Coloring>) -> Matroid {
        let linear = Arc::new(m);
        Matroid { oracle: linear.clone(), linear: Some(linear), coloring }
    }

    fn from_instance(inst: ColoredInstance) -> Matroid {
        Matroid::from_linear(inst.matroid, Some(inst.coloring))
    }

    fn require_coloring(&self) -> PyResult<&Coloring> {
        self.coloring
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("this matroid has no coloring attached"))
    }
}

#[pymethods]
impl Matroid {
    /// Builds a matroid from rational coordinate rows given as `p/q` strings
    /// or integers rendered as strings.
    #[staticmethod]
    fn from_rows(rows: Vec<Vec<String>>) -> PyResult<Matroid> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| matroidal::rational::parse_rational(t))
                    .collect::<matroidal::Result<Vec<_>>>()
            })
            .collect::<matroidal::Result<Vec<_>>>()
            .map_err(err)?;
        let m = LinearMatroid::from_rational_rows(parsed).map_err(err)?;
        Ok(Matroid::from_linear(m, None))
    }

    /// Loads a `.mat` or `.trunc` file, optionally with a `.col` file.
    #[staticmethod]
    #[pyo3(signature = (path, colfile=None))]
    fn from_file(path: PathBuf, colfile: Option<PathBuf>) -> PyResult<Matroid> {
        let loaded = matroidal::io::load_matroid(&path).map_err(err)?;
        let coloring = match colfile {
            Some(c) => Some(matroidal::io::load_coloring(&c, loaded.size()).map_err(err)?),
            None => None,
        };
        let linear = loaded.steps.is_empty().then(|| loaded.base.clone());
        Ok(Matroid { oracle: loaded.oracle, linear, coloring })
    }

    #[staticmethod]
    fn fig1() -> Matroid {
        Matroid::from_instance(fig1_configuration())
    }

    #[staticmethod]
    fn graphic(k: usize) -> PyResult<Matroid> {
        Ok(Matroid::from_instance(graphic_construction(k).map_err(err)?))
    }

    #[staticmethod]
    fn parallel_copies(k: usize, t: usize) -> PyResult<Matroid> {
        Ok(Matroid::from_instance(parallel_copies_construction(k, t).map_err(err)?))
    }

    /// The line-adjoined matroid over a colored base; returns the new
    /// matroid and the adjoined lines.
    #[staticmethod]
    fn line_adjoined(base: &Matroid, m: usize, k: usize) -> PyResult<(Matroid, Vec<Vec<usize>>)> {
        let col = *base.require_coloring()?;
        let lin = base
            .linear
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("the base must be a coordinate matroid"))?;
        // round-trip through the text format to obtain an owned copy
        let lin = LinearMatroid::parse_mat(&lin.write_mat()).map_err(err)?;
        let base_inst = ColoredInstance {
            matroid: lin,
            coloring: col,
            claimed_k: k,
            provenance: "python base".into(),
        };
        let (matroid, adjoined) = line_adjoined_construction(&base_inst, m).map_err(err)?;
        Ok((
            Matroid::from_linear(matroid, None),
            adjoined.into_iter().map(|l| l.indices()).collect(),
        ))
    }

    #[staticmethod]
    fn random(n: usize, rank: usize, seed: u64, bound: i64) -> PyResult<Matroid> {
        let m = random_instance(n, rank, seed, bound).map_err(err)?;
        Ok(Matroid::from_linear(m, None))
    }

    fn size(&self) -> usize {
        self.oracle.size()
    }

    fn full_rank(&self) -> usize {
        self.oracle.full_rank()
    }

    fn rank(&self, subset: Vec<usize>) -> PyResult<usize> {
        Ok(self.oracle.rank(to_subset(subset, self.size())?))
    }

    fn closure(&self, subset: Vec<usize>) -> PyResult<Vec<usize>> {
        Ok(self.oracle.closure(to_subset(subset, self.size())?).indices())
    }

    fn is_skew(&self, x: Vec<usize>, y: Vec<usize>) -> PyResult<bool> {
        Ok(self
            .oracle
            .is_skew(to_subset(x, self.size())?, to_subset(y, self.size())?))
    }

    fn flats(&self, rank: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(enumerate_flats(&*self.oracle, rank)
            .map_err(err)?
            .into_iter()
            .map(|f| f.members.indices())
            .collect())
    }

    fn hyperplanes(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(hyperplanes(&*self.oracle)
            .map_err(err)?
            .into_iter()
            .map(|f| f.members.indices())
            .collect())
    }

    fn lines(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(lines(&*self.oracle)
            .map_err(err)?
            .into_iter()
            .map(|f| f.members.indices())
            .collect())
    }

    /// Exact average hyperplane size as a `p/q` string.
    fn average_hyperplane_size(&self) -> PyResult<String> {
        Ok(format_rational(&average_hyperplane_size(&*self.oracle).map_err(err)?))
    }

    /// Covering flats of a k-degeneracy certificate, or None.
    fn degeneracy_certificate(&self, subset: Vec<usize>, k: usize) -> PyResult<Option<Vec<Vec<usize>>>> {
        let x = to_subset(subset, self.size())?;
        Ok(is_k_degenerate(&*self.oracle, x, k)
            .map_err(err)?
            .map(|c| c.flats.into_iter().map(|f| f.indices()).collect()))
    }

    /// Layers `X_2, ..., X_k` of the optimal stratification.
    fn stratification(&self, k: usize) -> PyResult<Vec<Vec<usize>>> {
        Ok(optimal_stratification(&*self.oracle, k)
            .map_err(err)?
            .layers
            .into_iter()
            .map(|l| l.indices())
            .collect())
    }

    /// A new matroid with the flat principally truncated `folds` times
    /// (default: completely).
    #[pyo3(signature = (flat, folds=None))]
    fn truncate(&self, flat: Vec<usize>, folds: Option<usize>) -> PyResult<Matroid> {
        let f = to_subset(flat, self.size())?;
        let folds = folds.unwrap_or_else(|| self.oracle.rank(f).saturating_sub(1));
        let oracle = k_fold_truncation(self.oracle.clone(), f, folds).map_err(err)?;
        Ok(Matroid { oracle, linear: None, coloring: None })
    }

    /// (c1, c2, c3) for the attached coloring.
    fn check_conditions(&self, k: usize) -> PyResult<(bool, bool, bool)> {
        let col = self.require_coloring()?;
        let rep = check_conditions(&*self.oracle, col, k).map_err(err)?;
        Ok((rep.c1, rep.c2, rep.c3))
    }

    fn monochromatic_blue_hyperplanes(&self) -> PyResult<usize> {
        let col = self.require_coloring()?;
        count_monochromatic_blue_hyperplanes(&*self.oracle, col).map_err(err)
    }

    fn red(&self) -> PyResult<Vec<usize>> {
        Ok(self.require_coloring()?.red.indices())
    }

    fn blue(&self) -> PyResult<Vec<usize>> {
        Ok(self.require_coloring()?.blue.indices())
    }

    /// Lines covering every hyperplane, or None.
    fn line_cover(&self, max_lines: usize) -> PyResult<Option<Vec<Vec<usize>>>> {
        Ok(find_line_cover(&*self.oracle, max_lines)
            .map_err(err)?
            .map(|c| c.lines.into_iter().map(|l| l.indices()).collect()))
    }

    /// (lhs, rhs-as-string, passed) of the aggregate excess inequality; None
    /// when the hypotheses fail.
    fn aggregate_inequality(&self, k: usize) -> PyResult<Option<(i64, String, bool)>> {
        let rep = check_aggregate_inequality(&*self.oracle, k).map_err(err)?;
        Ok(rep.hypotheses_met.then_some((rep.lhs, rep.rhs, rep.passed)))
    }
}

#[pymodule]
fn matroidal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Matroid>()?;
    Ok(())
}
