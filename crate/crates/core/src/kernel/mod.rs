//! Twin partitions and the twin-based kernelization rules.

mod rules;
mod twins;

pub use rules::{
    check_unplayed_twin_lemma, kernelize, rule_ft, rule_tt, Kernel, KernelCertificate, KernelError,
    KernelStep, Removal, Rule,
};
pub use twins::{
    false_twins, true_twins, twin_partition, PartitionError, TwinClass, TwinKind, TwinPartition,
};
