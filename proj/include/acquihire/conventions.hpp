// Copyright 2026 The Acquihire Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Indifference conventions shared by the closed forms and the oracle. Each
// flag says which action is taken when a player is exactly indifferent.

#ifndef ACQUIHIRE_CONVENTIONS_HPP_
#define ACQUIHIRE_CONVENTIONS_HPP_

namespace acquihire::conventions {

// The entrepreneur accepts a bid equal to the reservation value.
inline constexpr bool kEntrepreneurAcceptsAtReservation = true;

// A low-match first mover acquihires at lambda == threshold.
inline constexpr bool kAcquihireAtThreshold = true;

// Firms of the same match type do not trade technology, and a sale with
// zero surplus does not happen.
inline constexpr bool kTradeAtZeroSurplus = false;

// In the second period a low-match employer keeps the entrepreneur only if
// keeping is strictly better; at indifference it lays her off. This matches
// the case boundaries Case1: mu_D > lambda_A etc.
inline constexpr bool kKeepAtIndifference = false;

// An investor accepts a competitor's bid that exactly compensates it rather
// than attempting to block.
inline constexpr bool kInvestorAcceptsAtCompensation = true;

// Partial acquisitions: an investment wins ties against an acquihire and
// loses ties against doing nothing; smaller stakes win ties among
// investments. Ties between doing nothing and an acquihire follow
// kAcquihireAtThreshold; that comparison is made first and the winner is
// then compared with the best investment.

// Second-stage bids in the partial game: at indifference the rival prefers
// inducing both owners over inducing only the entrepreneur, and that over
// doing nothing (the weak inequalities of the stage-2 comparisons).
inline constexpr bool kRivalPrefersActiveBid = true;

}  // namespace acquihire::conventions

#endif  // ACQUIHIRE_CONVENTIONS_HPP_
