#include <gtest/gtest.h>

#include "hmvol/catalog.hpp"

using namespace hmvol;

TEST(Catalog, FamilyNames) {
    for (Family f : {Family::II, Family::T, Family::L, Family::K, Family::N})
        EXPECT_EQ(parse_family(family_name(f)), f);
    EXPECT_THROW(parse_family("Q"), PreconditionError);
    EXPECT_TRUE(family_uses_d(Family::K));
    EXPECT_FALSE(family_uses_d(Family::T));
}

TEST(Catalog, AllFamiliesMatch) {
    for (const CatalogRow& r : catalog(Family::II, {0, 1}, {}))
        EXPECT_TRUE(r.match()) << r.label;
    for (const CatalogRow& r : catalog(Family::T, {0, 1}, {}))
        EXPECT_TRUE(r.match()) << r.label;
    for (Family f : {Family::L, Family::K})
        for (const CatalogRow& r : catalog(f, {0, 1}, {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}))
            EXPECT_TRUE(r.match()) << r.label << " engine " << r.engine << " fixture " << r.fixture;
    for (const CatalogRow& r : catalog(Family::N, {0, 1}, {1, 5, 9, 13, 17, 21}))
        EXPECT_TRUE(r.match()) << r.label << " engine " << r.engine << " fixture " << r.fixture;
}

TEST(Catalog, Preconditions) {
    EXPECT_THROW(catalog_row(Family::N, 0, 3), PreconditionError);
    EXPECT_THROW(catalog_row(Family::L, 0, 0), PreconditionError);
}
