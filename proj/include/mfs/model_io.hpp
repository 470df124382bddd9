#pragma once

#include <string>

#include "mfs/cosvr.hpp"
#include "mfs/lssvr.hpp"

namespace mfs {

// Self-describing text serialization of trained models: hyperparameters,
// normalization constants, training samples, dual weights and bias, all
// printed with round-trip precision so reloaded predictions are identical.
void save_model(const CoSvrModel& model, const std::string& path);
void save_model(const LssvrModel& model, const std::string& path);

enum class ModelKind { CoSvr, Lssvr };
ModelKind peek_model_kind(const std::string& path);

CoSvrModel load_cosvr_model(const std::string& path);
LssvrModel load_lssvr_model(const std::string& path);

}  // namespace mfs
