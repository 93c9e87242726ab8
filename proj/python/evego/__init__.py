"""Deterministic toolkit for egocentric event-camera motion capture."""

from evego._core import (
    FisheyeIntrinsics,
    FrameBuffer,
    LossWeights,
    ToolkitError,
    encode_lnes,
    joints_total_loss,
    load_evt,
    load_intrinsics,
    make_confidence_map,
    mpjpe,
    pa_mpjpe,
    save_evt,
    simulate_events,
    smpl_joint_map,
    total_loss,
)

__all__ = [
    "FisheyeIntrinsics",
    "FrameBuffer",
    "LossWeights",
    "ToolkitError",
    "encode_lnes",
    "joints_total_loss",
    "load_evt",
    "load_intrinsics",
    "make_confidence_map",
    "mpjpe",
    "pa_mpjpe",
    "save_evt",
    "simulate_events",
    "smpl_joint_map",
    "total_loss",
]
