#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pverify {

enum class VarKind { coordinate, momentum, parameter };

// Identity of a variable: kind plus index within the kind.  The flat order is
// fixed globally: x, y, z, p_x, p_y, p_z, then parameters in declaration
// order.
struct VarId {
    VarKind kind;
    int index;

    bool operator==(const VarId& o) const { return kind == o.kind && index == o.index; }
};

// Immutable declaration context: the three coordinates, three momenta, and
// the declared parameter names.  Expressions hold a shared pointer to their
// context; mixing contexts is a programming error checked by assertions.
class Context {
  public:
    static constexpr int kPhaseVars = 6;

    static std::shared_ptr<const Context> create(std::vector<std::string> parameters) {
        return std::shared_ptr<const Context>(new Context(std::move(parameters)));
    }

    int nvars() const { return kPhaseVars + static_cast<int>(params_.size()); }
    int nparams() const { return static_cast<int>(params_.size()); }

    const std::string& name(int flat) const { return names_[flat]; }
    const std::vector<std::string>& parameter_names() const { return params_; }

    std::optional<int> find(const std::string& name) const {
        for (int v = 0; v < nvars(); ++v) {
            if (names_[v] == name) return v;
        }
        return std::nullopt;
    }

    static int flat_of(VarId id) {
        switch (id.kind) {
            case VarKind::coordinate: return id.index;
            case VarKind::momentum: return 3 + id.index;
            case VarKind::parameter: return kPhaseVars + id.index;
        }
        return -1;
    }

    VarId var_of(int flat) const {
        if (flat < 3) return {VarKind::coordinate, flat};
        if (flat < kPhaseVars) return {VarKind::momentum, flat - 3};
        return {VarKind::parameter, flat - kPhaseVars};
    }

    bool same_as(const Context& o) const { return this == &o || names_ == o.names_; }

  private:
    explicit Context(std::vector<std::string> parameters) : params_(std::move(parameters)) {
        names_ = {"x", "y", "z", "p_x", "p_y", "p_z"};
        names_.insert(names_.end(), params_.begin(), params_.end());
    }

    std::vector<std::string> params_;
    std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const Context>;

}  // namespace pverify
