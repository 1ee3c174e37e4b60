use crate::error::Result;
use crate::pl::PLFunction;
use crate::scalar::{int, Scalar};
use crate::torus::TorusSpace;
use crate::weights::WeightModule;

/// Weight data of a pair `h ⊂ g` on a split torus of `h`: the modules `h`,
/// `q = g/h` and optionally an extra module `V`.
#[derive(Clone, Debug)]
pub struct PairSpec<T> {
    g_module: WeightModule<T>,
    h_module: WeightModule<T>,
    v_module: Option<WeightModule<T>>,
    metadata: String,
}

impl<T: Scalar> PairSpec<T> {
    pub fn new(
        g_module: WeightModule<T>,
        h_module: WeightModule<T>,
        v_module: Option<WeightModule<T>>,
        metadata: impl Into<String>,
    ) -> Result<Self> {
        g_module.space().ensure_same(h_module.space())?;
        if let Some(v) = &v_module {
            v.space().ensure_same(h_module.space())?;
        }
        Ok(PairSpec {
            g_module,
            h_module,
            v_module,
            metadata: metadata.into(),
        })
    }

    pub fn space(&self) -> &TorusSpace<T> {
        self.h_module.space()
    }

    /// The module `g/h`.
    pub fn g_module(&self) -> &WeightModule<T> {
        &self.g_module
    }

    pub fn h_module(&self) -> &WeightModule<T> {
        &self.h_module
    }

    pub fn v_module(&self) -> Option<&WeightModule<T>> {
        self.v_module.as_ref()
    }

    pub fn metadata(&self) -> &str {
        &self.metadata
    }

    pub fn with_metadata(mut self, metadata: impl Into<String>) -> Self {
        self.metadata = metadata.into();
        self
    }

    pub fn with_module(mut self, v: WeightModule<T>) -> Result<Self> {
        v.space().ensure_same(self.space())?;
        self.v_module = Some(v);
        Ok(self)
    }

    pub fn without_module(mut self) -> Self {
        self.v_module = None;
        self
    }

    /// `dim g`, assuming the modules are complete.
    pub fn total_dim(&self) -> u64 {
        self.g_module.total_dim() + self.h_module.total_dim()
    }

    /// `rho_{g/h} + 2 rho_V - rho_h`, with every term kept (no cancellation).
    pub fn deficit(&self) -> PLFunction<T> {
        let mut f = self
            .g_module
            .rho_function()
            .add(&self.h_module.rho_function().scale(&-T::one()))
            .expect("modules share a space");
        if let Some(v) = &self.v_module {
            f = f
                .add(&v.rho_function().scale(&int(2)))
                .expect("modules share a space");
        }
        f
    }
}
