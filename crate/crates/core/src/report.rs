//! Uniform result type for the alpha and tau bound families.

use num_rational::Ratio;

/// Caveat attached to bounds whose proof needs characteristic 0.
pub const CHARACTERISTIC_ZERO: &str = "valid in characteristic 0";
/// Caveat attached to values that are predictions of the SHGH conjecture.
pub const SHGH_CONDITIONAL: &str = "SHGH-conditional";
/// Caveat for the Catalisano bound, whose procedure tests an otherwise
/// unspecified point count.
pub const CATALISANO_POINT_COUNT: &str =
    "point count in the special-case tests read as the number of nonzero multiplicities";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    AlphaLower,
    TauUpper,
}

impl Direction {
    pub fn as_str(self) -> &'static str {
        match self {
            Direction::AlphaLower => "alpha-lower",
            Direction::TauUpper => "tau-upper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    NefTest,
    CorA,
    CorB,
    CorC,
    CorD,
    Unloading,
    UnloadingFormula,
    BestUnloading,
    Roe,
    ModifiedUnloading,
    HrFormulaA,
    HrFormulaB,
    Psi,
    Segre,
    Cubic,
    Gimigliano,
    Hirschowitz,
    Catalisano,
    Ballico,
    Xu,
    Hhf,
    Ran,
}

impl Method {
    pub const ALL: [Method; 22] = [
        Method::NefTest,
        Method::CorA,
        Method::CorB,
        Method::CorC,
        Method::CorD,
        Method::Unloading,
        Method::UnloadingFormula,
        Method::BestUnloading,
        Method::Roe,
        Method::ModifiedUnloading,
        Method::HrFormulaA,
        Method::HrFormulaB,
        Method::Psi,
        Method::Segre,
        Method::Cubic,
        Method::Gimigliano,
        Method::Hirschowitz,
        Method::Catalisano,
        Method::Ballico,
        Method::Xu,
        Method::Hhf,
        Method::Ran,
    ];

    /// Inverse of [`Method::as_str`].
    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.as_str() == name)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::NefTest => "nef-test",
            Method::CorA => "cor-a",
            Method::CorB => "cor-b",
            Method::CorC => "cor-c",
            Method::CorD => "cor-d",
            Method::Unloading => "unloading",
            Method::UnloadingFormula => "unloading-formula",
            Method::BestUnloading => "best-unloading",
            Method::Roe => "roe",
            Method::ModifiedUnloading => "modified-unloading",
            Method::HrFormulaA => "hr-formula-a",
            Method::HrFormulaB => "hr-formula-b",
            Method::Psi => "psi",
            Method::Segre => "segre",
            Method::Cubic => "cubic",
            Method::Gimigliano => "gimigliano",
            Method::Hirschowitz => "hirschowitz",
            Method::Catalisano => "catalisano",
            Method::Ballico => "ballico",
            Method::Xu => "xu",
            Method::Hhf => "hhf",
            Method::Ran => "ran",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params {
    pub r: Option<i64>,
    pub d: Option<i64>,
    pub j: Option<i64>,
    pub weights: Option<Vec<Ratio<i64>>>,
    pub c: Option<Ratio<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub method: Method,
    pub direction: Direction,
    pub value: i64,
    pub params: Params,
    pub validity: Vec<String>,
}

impl BoundReport {
    pub(crate) fn alpha(method: Method, value: i64) -> Self {
        BoundReport {
            method,
            direction: Direction::AlphaLower,
            value,
            params: Params::default(),
            validity: Vec::new(),
        }
    }

    pub(crate) fn tau(method: Method, value: i64) -> Self {
        BoundReport {
            direction: Direction::TauUpper,
            ..BoundReport::alpha(method, value)
        }
    }

    pub(crate) fn rd(mut self, r: i64, d: i64) -> Self {
        self.params.r = Some(r);
        self.params.d = Some(d);
        self
    }

    pub(crate) fn caveat(mut self, text: &str) -> Self {
        self.validity.push(text.to_string());
        self
    }
}
