#include "orp/word.hpp"

namespace orp {

Symbol Alphabet::push(const std::string& name, Order order) {
  if (name.empty()) throw Error(ErrorCode::Parse, "empty letter name");
  if (index_.contains(name)) throw Error(ErrorCode::Parse, "duplicate letter '" + name + "'");
  const auto s = static_cast<Symbol>(names_.size());
  names_.push_back(name);
  inverse_.push_back(s);
  order_.push_back(order);
  index_.emplace(name, s);
  return s;
}

Symbol Alphabet::addPair(const std::string& name, const std::string& inverseName, Order order) {
  if (order.is(2)) throw Error(ErrorCode::Parse, "letters of order 2 are self-inverse: " + name);
  if (order.is(1)) throw Error(ErrorCode::IdentityLetter, "identity letters are not allowed: " + name);
  if (name == inverseName) throw Error(ErrorCode::Parse, "a pair needs two distinct names");
  const Symbol s = push(name, order);
  const Symbol t = push(inverseName, order);
  inverse_[static_cast<std::size_t>(s)] = t;
  inverse_[static_cast<std::size_t>(t)] = s;
  return s;
}

Symbol Alphabet::addSelfInverse(const std::string& name) { return push(name, Order::finite(2)); }

std::optional<Symbol> Alphabet::find(const std::string& name) const {
  if (auto it = index_.find(name); it != index_.end()) return it->second;
  return std::nullopt;
}

std::string Alphabet::format(const Word& w) const {
  std::string out;
  for (Symbol s : w) {
    if (!out.empty()) out += ' ';
    out += name(s);
  }
  return out;
}

}  // namespace orp
