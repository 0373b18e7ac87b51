//! Soft-finger parallel gripper geometry.

use serde::{Deserialize, Serialize};

/// Finger geometry of the pneumatic parallel gripper. The fingers deform
/// rather than articulate: `open_deformation` is how far each fingertip
/// bows outward at full opening pressure, `close_deformation` how far it
/// bows inward when closing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GripperModel {
    /// Spacing between the finger mounts, meters.
    pub finger_spacing_w0: f64,
    /// Finger length, meters.
    pub finger_length_l: f64,
    /// Max outward fingertip deformation when opening, meters.
    pub open_deformation_hmax: f64,
    /// Max inward fingertip deformation when closing, meters.
    pub close_deformation_hmin: f64,
}

impl Default for GripperModel {
    fn default() -> Self {
        GripperModel {
            finger_spacing_w0: 0.030,
            finger_length_l: 0.083,
            open_deformation_hmax: 0.033,
            close_deformation_hmin: 0.039,
        }
    }
}

impl GripperModel {
    /// Widest object the opened fingers straddle.
    pub fn max_opening_span(&self) -> f64 {
        self.finger_spacing_w0 + 2.0 * self.open_deformation_hmax
    }
}
