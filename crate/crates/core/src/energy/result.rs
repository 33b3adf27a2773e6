/// Value of an energy-like mode sum with truncation diagnostics.
///
/// Energies are in natural units (`ħ = c = k_B = 1`), i.e. inverse length.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EnergyResult {
    pub value: f64,
    pub te: Option<f64>,
    pub tm: Option<f64>,
    /// Largest `l` summed over all channels.
    pub l_used: u32,
    /// Largest Matsubara index used for any `l`; zero for the classical term
    /// and the zero-temperature integral.
    pub p_used: u32,
    /// Estimated absolute error, including the certified `l`-tail.
    pub error_estimate: f64,
    pub temperature: f64,
    pub warnings: Vec<String>,
}

impl EnergyResult {
    pub fn relative_error(&self) -> f64 {
        if self.value == 0.0 {
            self.error_estimate
        } else {
            self.error_estimate / self.value.abs()
        }
    }

    pub(crate) fn scale(mut self, factor: f64) -> Self {
        self.value *= factor;
        self.te = self.te.map(|v| v * factor);
        self.tm = self.tm.map(|v| v * factor);
        self.error_estimate *= factor.abs();
        self
    }
}
